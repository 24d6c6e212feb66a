from fractions import Fraction as F

import pytest

from superstrange import (
    AlgebraSpecError,
    DegenerateForm,
    LieSuperalgebra,
    build_glmn,
    build_odd_symplectic,
    build_ospm2n,
    build_slmn,
    casimir,
    direct_sum,
    dual_basis,
    fixed_point_subalgebra,
    grading_from_torus,
    killing_form,
    parse_algebra,
    validate,
)
from superstrange.exact import ONE, ZERO
from superstrange.families import catalog_specs, matrix_superalgebra, osp_dim


def test_gl11_brackets():
    L = build_glmn(1, 1)
    e = L.element
    assert L.bracket(e({"E11": 1}), e({"E12": 1})) == e({"E12": 1})
    assert L.bracket(e({"E12": 1}), e({"E21": 1})) == e({"E11": 1, "E22": 1})
    assert L.bracket(e({"E21": 1}), e({"E12": 1})) == e({"E11": 1, "E22": 1})
    assert L.bracket(e({"E11": 1}), e({"E21": 1})) == e({"E21": -1})


@pytest.mark.parametrize("spec", ["gl(2|1)", "osp(3|2)", "sl(3|0)"])
def test_even_self_bracket_vanishes(spec):
    L = parse_algebra(spec)
    for i in L.even:
        assert L.bracket_basis(i, i) == {}


def test_bracket_is_bilinear():
    L = build_glmn(2, 1)
    a = L.element({"E12": 2, "E13": F(1, 3)})
    b = L.element({"E21": -1, "E31": 5, "E33": 1})
    c = L.element({"E23": 7})
    left = L.bracket(a, {k: v * 3 for k, v in b.items()})
    assert left == {k: 3 * v for k, v in L.bracket(a, b).items()}
    bc = dict(b)
    for k, v in c.items():
        bc[k] = bc.get(k, ZERO) + v
    expect = dict(L.bracket(a, b))
    for k, v in L.bracket(a, c).items():
        expect[k] = expect.get(k, ZERO) + v
    assert L.bracket(a, bc) == {k: v for k, v in expect.items() if v}


@pytest.mark.parametrize("spec", ["gl(2|1)", "gl(1|1)", "sl(3|1)", "osp(1|2)", "osp(3|2)", "osp(2|4)",
                                  "osp(5|0)", "osp(0|4)", "C(0|2)", "gl(2|2)"])
def test_constructors_validate(spec):
    rep = validate(parse_algebra(spec))
    assert rep.ok, rep.failures()


def test_perturbed_gl11_breaks_jacobi():
    L = build_glmn(1, 1)
    bad = L.perturbed(L.index("E11"), L.index("E12"), L.index("E12"), 1)
    rep = validate(bad)
    assert not rep["super_jacobi"].passed
    assert rep["super_jacobi"].witness is not None
    assert not rep.ok


def test_odd_symplectic_is_quadratic():
    C = build_odd_symplectic(1)
    assert C.parity == (1, 1)
    assert C.structure_constants == {}
    assert validate(C).ok


@pytest.mark.parametrize("m,n", [(1, 1), (2, 1), (3, 2), (2, 0)])
def test_gl_dimensions(m, n):
    L = build_glmn(m, n)
    assert L.dim == (m + n) ** 2
    assert L.sdim == (m - n) ** 2
    assert L.rank == m + n


@pytest.mark.parametrize("m,n", [(2, 1), (3, 1), (1, 3), (3, 0)])
def test_sl_dimensions(m, n):
    L = build_slmn(m, n)
    assert L.dim == (m + n) ** 2 - 1
    assert L.sdim == (m - n) ** 2 - 1


@pytest.mark.parametrize("m,n", [(1, 1), (2, 1), (3, 1), (4, 1), (1, 2), (3, 0), (0, 2)])
def test_osp_dimensions(m, n):
    L = build_ospm2n(m, n)
    assert L.dim == osp_dim(m, n)
    even = m * (m - 1) // 2 + n * (2 * n + 1)
    assert len(L.even) == even
    assert len(L.odd) == 2 * m * n


@pytest.mark.parametrize("n", [1, 2])
def test_sl_nn_is_rejected(n):
    with pytest.raises(DegenerateForm):
        build_slmn(n, n)


def test_form_parity_blocks():
    for spec in ("gl(2|1)", "osp(3|2)"):
        L = parse_algebra(spec)
        for i in L.even:
            for j in L.odd:
                assert L.form[i, j] == 0 and L.form[j, i] == 0


def test_dual_basis_convention():
    L = build_glmn(1, 1)
    d = dual_basis(L)
    # the basis vector sits on the left: (x_j, x^i) = delta_ij
    assert d[L.index("E12")] == L.element({"E21": 1})
    assert d[L.index("E21")] == L.element({"E12": -1})
    for i in range(L.dim):
        for j in range(L.dim):
            assert L.pair({j: ONE}, d[i]) == (ONE if i == j else ZERO)


@pytest.mark.parametrize("spec", ["osp(1|2)", "sl(2|1)", "gl(2|2)"])
def test_dual_basis_reconstructs(spec):
    L = parse_algebra(spec)
    d = dual_basis(L)
    v = {k: F(k + 1, 3) for k in range(L.dim)}
    back = {}
    for i in range(L.dim):
        c = L.pair(v, d[i])
        if c:
            back[i] = c
    assert back == v
    for i in range(L.dim):
        assert all(L.parity[k] == L.parity[i] for k in d[i])


def test_killing_form_examples():
    sl2 = build_slmn(2, 0)
    K = killing_form(sl2)
    h = sl2.index("H1")
    assert K[h, h] == 8
    assert K[sl2.index("E12"), sl2.index("E21")] == 4
    assert killing_form(build_odd_symplectic(1)).is_zero()
    gl11 = build_glmn(1, 1)
    assert killing_form(gl11) != gl11.form


def test_killing_form_vanishes_on_gl_nn():
    L = build_glmn(2, 2)
    assert killing_form(L).rank() < L.dim


def test_fixed_point_subalgebra():
    L = build_glmn(2, 1)
    G = grading_from_torus(L, (F(1, 2), 0, 0))
    g0 = fixed_point_subalgebra(L, G)
    assert set(g0.labels) == {"E11", "E22", "E33", "E23", "E32"}
    assert validate(g0).ok
    sl2 = build_slmn(2, 0)
    g0 = fixed_point_subalgebra(sl2, grading_from_torus(sl2, (F(1, 4),)))
    assert g0.labels == ("H1",)


@pytest.mark.parametrize("spec", ["gl(1|1)", "osp(3|2)", "C(0|2)", "sl(2|1)"])
def test_text_round_trip(spec):
    L = parse_algebra(spec)
    back = LieSuperalgebra.from_text(L.to_text())
    assert back.same_as(L)
    assert back.to_text() == L.to_text()
    assert LieSuperalgebra.from_dict(L.to_dict()).same_as(L)


def test_scaled_form():
    L = build_slmn(2, 1)
    Lc = L.scaled(3)
    assert Lc.form == L.form.scale(3)
    assert casimir(Lc).g_value == casimir(L).g_value / 3


def test_parse_algebra_grammar():
    assert parse_algebra("sl(3)").same_as(build_slmn(3, 0))
    assert parse_algebra("sp(4)").dim == 10
    assert parse_algebra("so(5)").dim == 10
    assert parse_algebra("sl(2) + sl(2)").dim == 6
    for bad in ("foo(2|1)", "gl(2|", "", "sl(2|2)x"):
        with pytest.raises(AlgebraSpecError):
            parse_algebra(bad)


def test_catalog_is_within_bounds():
    specs = catalog_specs()
    assert len(specs) == len(set(specs))
    for s in specs:
        assert parse_algebra(s).dim <= 40


def test_direct_sum_blocks():
    S = direct_sum(build_slmn(2, 0), build_odd_symplectic(1))
    assert S.dim == 5
    assert validate(S).ok


@pytest.mark.parametrize("m,eta", [(3, (2, 1, -2)), (4, (2, -2, 2, -2))])
def test_so_matches_eta_antisymmetric_realization(m, eta):
    # the antidiagonal form is congruent over Q to diag(eta), so the two
    # realizations are isomorphic and share g for the same trace form
    mats, labels = [], []
    for a in range(m):
        for b in range(a + 1, m):
            mats.append({(a, b): F(1, eta[a]), (b, a): F(-1, eta[b])})
            labels.append(f"A{a}{b}")
    S = matrix_superalgebra(mats, [0] * m, labels, (), F(1, 2), f"so_eta({m})")
    osp = build_ospm2n(m, 0)
    assert validate(S).ok
    assert S.dim == osp.dim
    assert casimir(S).g_value == casimir(osp).g_value
