"""Acceptance suite: exact checks for criteria 1 to 9.

Every comparison is an equality of Fractions.  Each criterion prints one
``PASS``/``FAIL`` line; run this file directly to get just those lines, or
through pytest, where they are repeated in the terminal summary.
"""

from __future__ import annotations

import sys
from fractions import Fraction as F
from functools import lru_cache
from typing import Callable, Dict, List, Tuple

import pytest

from superstrange import (
    DecomposableAlgebra,
    DegenerateForm,
    SuperstrangeError,
    build_glmn,
    build_slmn,
    casimir,
    casimir_symmetry_check,
    choose_positive,
    grading_from_torus,
    killing_form,
    parse_algebra,
    root_decomposition,
    sigma_weyl_data,
    triangular,
    validate,
    verify_cg_orthogonality,
    verify_even_vsf,
    verify_strange,
    verify_sumsixixi,
    verify_very_strange,
    weyl_vector,
)
from superstrange.exact import ONE
from superstrange.families import catalog_specs
from superstrange.formulas import even_label_sets
from superstrange.gradings import sample_tori
from superstrange.structure import highest_root

SEED = 2024
TORI_PER_ALGEBRA = 20
SCALARS = (F(3), F(-1), F(7, 2))

RESULTS: Dict[int, str] = {}


@lru_cache(maxsize=None)
def algebra(spec: str):
    return parse_algebra(spec)


@lru_cache(maxsize=None)
def tori(spec: str):
    return tuple(sample_tori(algebra(spec), TORI_PER_ALGEBRA, SEED))


def super_specs() -> List[str]:
    """Criterion 2 list: gl and sl (m != n) with m + n <= 5, osp with dim <= 40."""
    return [s for s in catalog_specs() if not s.startswith("C(")]


def _run(check: Callable, *args) -> Tuple[bool, str]:
    try:
        rep = check(*args)
    except SuperstrangeError as exc:
        return False, f"{type(exc).__name__}"
    return rep.passed, "" if rep.passed else rep.line()


def _summarize(n: int, title: str, failures: List[str], total: int) -> Tuple[bool, str]:
    ok = not failures
    head = f"{'PASS' if ok else 'FAIL'} criterion {n} ({title}): {total - len(failures)}/{total} exact"
    if failures:
        shown = "; ".join(failures[:4])
        more = f" (+{len(failures) - 4} more)" if len(failures) > 4 else ""
        head += f" | failing: {shown}{more}"
    return ok, head


# ---------------------------------------------------------------------------


def criterion_1():
    specs = ["sl(2|0)", "sl(3|0)", "sl(4|0)", "sl(5|0)", "osp(5|0)", "osp(7|0)", "osp(0|4)", "osp(0|6)"]
    failures = []
    for s in specs:
        L = algebra(s)
        ok, why = _run(verify_strange, L, None, True)
        if ok:
            rep = verify_strange(L, use_killing=True)
            ok = rep.lhs == F(L.dim, 24)
            why = why or f"lhs {rep.lhs} != dim/24"
        if not ok:
            failures.append(f"{s}: {why}")
    fixed = {"sl(2|0)": F(1, 8), "sl(3|0)": F(1, 3)}
    for s, v in fixed.items():
        if verify_strange(algebra(s), use_killing=True).lhs != v:
            failures.append(f"{s}: expected {v}")
    return _summarize(1, "strange formula, Killing form", failures, len(specs) + len(fixed))


def criterion_2():
    specs = super_specs()
    failures = [f"{s}: {why}" for s in specs for ok, why in [_run(verify_strange, algebra(s))] if not ok]
    for s in ("gl(1|1)", "gl(2|2)"):
        rep = verify_strange(algebra(s))
        if not rep.lhs == rep.rhs == 0:
            failures.append(f"{s}: sides not both zero")
    return _summarize(2, "strange formula, super case", failures, len(specs) + 2)


def criterion_3():
    failures, total = [], 0
    for s in catalog_specs():
        L = algebra(s)
        for t in tori(s):
            total += 1
            ok, why = _run(verify_very_strange, L, t)
            if not ok:
                failures.append(f"{s}@({t}): {why}")
    for s, t in (("sl(2|0)", (F(1, 4),)), ("gl(1|1)", (0, F(1, 2)))):
        total += 1
        rep = verify_very_strange(algebra(s), t)
        if not rep.lhs == rep.rhs == 0:
            failures.append(f"{s} hand case")
    return _summarize(3, "very strange formula", failures, total)


def criterion_4():
    failures, total = [], 0
    rep = verify_even_vsf(algebra("sl(2|0)"), (1, 1))
    total += 1
    if not rep.lhs == rep.rhs == 0:
        failures.append("sl(2) (1,1)")
    for s in ("sl(2|0)", "sl(3|0)", "sl(4|0)", "osp(0|4)"):
        L = algebra(s)
        for labels in even_label_sets(L, 4):
            total += 1
            ok, why = _run(verify_even_vsf, L, labels)
            if not ok:
                failures.append(f"{s} {labels}: {why}")
    return _summarize(4, "even very strange formula", failures, total)


def criterion_5():
    failures, total = [], 0
    for s in catalog_specs():
        L = algebra(s)
        for t in tori(s):
            for check in (verify_sumsixixi, verify_cg_orthogonality):
                total += 1
                ok, why = _run(check, L, t)
                if not ok:
                    failures.append(f"{check.__name__[7:]} {s}@({t}): {why}")
    return _summarize(5, "sum s_i[x^i,x_i] and C_g orthogonality", failures, total)


def criterion_6():
    failures, total = [], 0
    for s in catalog_specs():
        L = algebra(s)
        total += 1
        try:
            T = triangular(L)
            bad = [c.name for c in T.checks() if not c.passed]
            if not T.certificate().isotropic:
                bad.append("h_plus_n_not_isotropic")
        except SuperstrangeError as exc:
            bad = [type(exc).__name__]
        if bad:
            failures.append(f"{s}: {','.join(bad)}")
        for t in tori(s):
            total += 1
            try:
                T = sigma_weyl_data(L, grading_from_torus(L, t)).fixed
                bad = [c.name for c in T.checks() if not c.passed]
                if not T.certificate().isotropic:
                    bad.append("h_plus_n_not_isotropic")
            except SuperstrangeError as exc:
                bad = [type(exc).__name__]
            if bad:
                failures.append(f"{s}^0@({t}): {','.join(bad)}")
    return _summarize(6, "triangular decomposition structure", failures, total)


def criterion_7():
    failures, total = [], 0
    for s in catalog_specs():
        L = algebra(s)
        total += 1
        if not casimir_symmetry_check(L):
            failures.append(f"{s}: Omega not symmetric")
        try:
            data = casimir(L)
        except DecomposableAlgebra:
            # two eigenvalues: no C_g to inspect (these are the gl(m|n), m != n)
            continue
        if data.c_g.is_zero():
            continue
        m, n = (int(x) for x in s[3:-1].split("|")) if s.startswith("gl(") else (-1, -2)
        if data.g_value != 0 or m != n:
            failures.append(f"{s}: C_g != 0 with g = {data.g_value}")
        for v in data.c_g_image():
            if any(L.bracket(v, {k: ONE}) for k in range(L.dim)):
                failures.append(f"{s}: C_g image not central")
                break
    for n in (2, 3, 4):
        total += 1
        L = build_slmn(n, 0)
        K = killing_form(L)
        rd = choose_positive(root_decomposition(L.with_form(K)))
        A = L.with_form(K.scale(rd.norm2(highest_root(rd)) / 2))
        rd = choose_positive(root_decomposition(A))
        theta, rho = highest_root(rd), weyl_vector(rd)
        g = casimir(A).g_value
        if rd.norm2(theta) != 2 or 2 * g != rd.pair(theta, tuple(a + 2 * b for a, b in zip(theta, rho))):
            failures.append(f"sl({n}) dual Coxeter cross-check")
    return _summarize(7, "Casimir suite", failures, total)


def _scaled_pair(check, L, Lc, t, c):
    """Compare one formula on L and on L with form c*B; returns a failure string or None."""
    try:
        a = check(L) if t is None else check(L, t)
    except DecomposableAlgebra:
        try:
            check(Lc) if t is None else check(Lc, grading_from_torus(Lc, t))
        except DecomposableAlgebra:
            return None
        return "verdict changed (raised only before scaling)"
    b = check(Lc) if t is None else check(Lc, grading_from_torus(Lc, t))
    if a.passed != b.passed:
        return "verdict changed"
    for x, y in ((a.lhs, b.lhs), (a.rhs, b.rhs)):
        want = tuple(v / c for v in x) if isinstance(x, tuple) else x / c
        if want != y:
            return f"side {x} does not scale to {y}"
    return None


def criterion_8():
    failures, total = [], 0
    for s in catalog_specs():
        L = algebra(s)
        t = tori(s)[0]
        for c in SCALARS:
            Lc = L.scaled(c)
            for check, tt in ((verify_strange, None), (verify_very_strange, t), (verify_sumsixixi, t)):
                total += 1
                why = _scaled_pair(check, L, Lc, tt, c)
                if why:
                    failures.append(f"{check.__name__} {s} c={c}: {why}")
    return _summarize(8, "scale invariance", failures, total)


def criterion_9():
    failures = []
    gl11 = build_glmn(1, 1)
    bad = gl11.perturbed(gl11.index("E11"), gl11.index("E12"), gl11.index("E12"), 1)
    if validate(bad)["super_jacobi"].passed:
        failures.append("perturbed gl(1|1) passes Jacobi")
    try:
        build_slmn(2, 2)
        failures.append("sl(2|2) built")
    except DegenerateForm:
        pass
    try:
        casimir(parse_algebra("sl(2) + sl(3)"))
        failures.append("sl(2)+sl(3) accepted")
    except DecomposableAlgebra:
        pass
    return _summarize(9, "negative controls", failures, 3)


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9]


@pytest.mark.parametrize("number", range(1, 10))
def test_criterion(number):
    ok, line = CRITERIA[number - 1]()
    RESULTS[number] = line
    print(line)
    assert ok, line


def main() -> int:
    status = 0
    for n, fn in enumerate(CRITERIA, 1):
        ok, line = fn()
        print(line, flush=True)
        status |= not ok
    return status


if __name__ == "__main__":
    sys.exit(main())
