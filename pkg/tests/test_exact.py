from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from superstrange.errors import SpectrumNotRational
from superstrange.exact import (
    Coordinates,
    Echelon,
    QMatrix,
    Q,
    char_poly,
    inverse,
    intersect,
    is_nilpotent,
    kernel,
    phase,
    poly_eval_matrix,
    qstr,
    rank,
    rational_roots,
    rational_spectrum_split,
    solve,
)


def mat(rows):
    return QMatrix([[Q(x) for x in r] for r in rows])


def test_scalars_reject_floats_and_parse_strings():
    assert Q("3/6") == F(1, 2)
    with pytest.raises(TypeError):
        Q(0.5)
    assert qstr(F(-4, 6)) == "-2/3"
    assert qstr(F(5)) == "5"


def test_phase_is_mod_one():
    assert phase(F(-1, 3)) == F(2, 3)
    assert phase(F(7, 2)) == F(1, 2)
    assert phase(2) == 0


def test_kernel_identity_is_empty():
    assert kernel(QMatrix.identity(3)) == []


def test_kernel_rank_one():
    (v,) = kernel(mat([[1, 1], [1, 1]]))
    assert v[0] == -v[1] != 0


def test_kernel_of_product_has_two_vectors():
    A = mat([[1, 2], [F(1, 3), -1], [0, 5], [2, F(7, 2)]])
    B = mat([[1, 0, 2, -1], [F(1, 2), 1, 0, 3]])
    M = A @ B
    ker = kernel(M)
    assert len(ker) == 2 == M.cols - rank(M)
    for v in ker:
        assert all(x == 0 for x in M @ v)


def test_char_poly_examples():
    assert char_poly(QMatrix.zeros(2)) == [0, 0, 1]
    assert char_poly(QMatrix.diag([F(1, 2), F(1, 2)])) == [F(1, 4), -1, 1]
    # companion matrix of t^3 - 2t + 1
    C = mat([[0, 0, -1], [1, 0, 2], [0, 1, 0]])
    assert char_poly(C) == [1, -2, 0, 1]


def test_spectrum_split_examples():
    out = rational_spectrum_split(QMatrix.diag([2, 2, 0]))
    assert [(lam, len(sp)) for lam, sp in out] == [(0, 1), (2, 2)]
    J = mat([[0, 1], [0, 0]])
    assert [(lam, len(sp)) for lam, sp in rational_spectrum_split(J)] == [(0, 2)]


def test_spectrum_split_rejects_irrational():
    with pytest.raises(SpectrumNotRational):
        rational_spectrum_split(mat([[0, 2], [1, 0]]))


def test_rational_roots_multiplicity():
    # (t - 1/2)^2 (t + 3)
    assert rational_roots([F(3, 4), F(-11, 4), 2, 1]) == {F(1, 2): 2, F(-3): 1}


def test_inverse_and_solve():
    M = mat([[2, 1], [F(1, 3), 4]])
    assert M @ inverse(M) == QMatrix.identity(2)
    x = solve(M, [1, 2])
    assert M @ x == (1, 2)
    with pytest.raises(ZeroDivisionError):
        inverse(mat([[1, 2], [2, 4]]))
    with pytest.raises(ValueError):
        solve(mat([[1, 2], [2, 4]]), [1, 0])


def test_sparse_helpers():
    e = Echelon([{0: F(1), 1: F(1)}])
    assert e.contains({0: F(2), 1: F(2)})
    assert not e.add({0: F(3), 1: F(3)})
    assert e.add({1: F(1)})
    c = Coordinates([{0: F(1), 1: F(1)}, {1: F(1)}])
    assert c({0: F(2), 1: F(5)}) == {0: F(2), 1: F(3)}
    with pytest.raises(ValueError):
        c({2: F(1)})
    meet = intersect([{0: F(1)}, {1: F(1)}], [{1: F(1)}, {2: F(1)}])
    assert meet == [{1: F(1)}]


def test_nilpotent():
    assert is_nilpotent(mat([[0, 1, 0], [0, 0, 1], [0, 0, 0]]))
    assert not is_nilpotent(mat([[0, 1], [1, 0]]))


small = st.fractions(min_value=-4, max_value=4, max_denominator=3)


@st.composite
def square(draw, max_n=8):
    n = draw(st.integers(1, max_n))
    return QMatrix([[draw(small) for _ in range(n)] for _ in range(n)])


@settings(max_examples=40, deadline=None)
@given(square())
def test_cayley_hamilton(M):
    p = char_poly(M)
    assert p[-1] == 1 and len(p) == M.rows + 1
    assert poly_eval_matrix(p, M).is_zero()


@settings(max_examples=40, deadline=None)
@given(square(6))
def test_kernel_vectors_are_annihilated(M):
    ker = kernel(M)
    assert len(ker) == M.cols - rank(M)
    for v in ker:
        assert all(x == 0 for x in M @ v)


@settings(max_examples=25, deadline=None)
@given(st.lists(st.integers(-3, 3), min_size=1, max_size=5), st.data())
def test_split_of_conjugated_diagonal(eigs, data):
    n = len(eigs)
    # unit upper triangular change of basis keeps everything rational
    P = QMatrix([[F(1) if i == j else (data.draw(small) if j > i else F(0)) for j in range(n)]
                 for i in range(n)])
    M = P @ QMatrix.diag(eigs) @ inverse(P)
    out = rational_spectrum_split(M)
    assert sum(len(sp) for _, sp in out) == n
    assert sorted(lam for lam, sp in out for _ in sp) == sorted(F(e) for e in eigs)
    for lam, sp in out:
        for v in sp:
            w = M @ v
            # generalized eigenspaces are M-invariant
            assert Echelon([dict(enumerate(x)) for x in sp]).contains(
                {k: x for k, x in enumerate(w) if x})
