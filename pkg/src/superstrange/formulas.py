"""Exact verification of the strange-type formulas and their companion identities."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

from .errors import SingularCartanSystem
from .exact import ONE, ZERO, Q, QMatrix, Vec, qstr, solve, to_dense, vaxpy
from .gradings import Grading, TorusElement, grading_from_torus, sigma_weyl_data, trivial_grading
from .structure import (
    RootDatum,
    Weight,
    casimir,
    choose_positive,
    highest_root,
    root_coordinates,
    root_decomposition,
    simple_roots,
    weyl_vector,
    wsub,
)
from .superalgebra import LieSuperalgebra, dual_basis, killing_form

Side = Union[Fraction, Tuple[Fraction, ...]]


def _side_str(x: Side):
    return [qstr(c) for c in x] if isinstance(x, tuple) else qstr(x)


def _side_parse(x) -> Side:
    return tuple(Q(c) for c in x) if isinstance(x, list) else Q(x)


@dataclass(frozen=True)
class VerificationReport:
    """One formula check; ``passed`` is exact equality of the two sides.

    Scalar identities carry Fractions on both sides; vector identities in h
    carry coordinate tuples over the Cartan basis.
    """

    formula: str
    algebra: str
    torus: str
    m: int
    lhs: Side
    rhs: Side
    context: Dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.lhs == self.rhs

    def to_dict(self) -> dict:
        return {
            "formula": self.formula,
            "algebra": self.algebra,
            "torus": self.torus,
            "m": self.m,
            "lhs": _side_str(self.lhs),
            "rhs": _side_str(self.rhs),
            "pass": self.passed,
            "context": self.context,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict) -> "VerificationReport":
        rep = cls(d["formula"], d["algebra"], d["torus"], int(d["m"]),
                  _side_parse(d["lhs"]), _side_parse(d["rhs"]), dict(d.get("context", {})))
        if "pass" in d and bool(d["pass"]) != rep.passed:
            raise ValueError("stored verdict disagrees with the recorded sides")
        return rep

    @classmethod
    def from_json(cls, text: str) -> "VerificationReport":
        return cls.from_dict(json.loads(text))

    def line(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        where = f" @ h_s=({self.torus})" if self.torus else ""
        return (f"{verdict} {self.formula} {self.algebra}{where}: "
                f"lhs={_fmt(self.lhs)} rhs={_fmt(self.rhs)}")


def _fmt(x: Side) -> str:
    return "(" + ", ".join(qstr(c) for c in x) + ")" if isinstance(x, tuple) else qstr(x)


def _wlist(w: Sequence[Fraction]) -> List[str]:
    return [qstr(x) for x in w]


def _functional_ctx(functional) -> Any:
    return "lexicographic" if functional is None else _wlist(functional)


# ---------------------------------------------------------------------------


def verify_strange(L: LieSuperalgebra, functional=None, use_killing: bool = False) -> VerificationReport:
    """||rho||^2 against g * sdim / 12, with g half the Casimir eigenvalue.

    With ``use_killing`` the form is replaced by the Killing form first, which
    for a simple even algebra turns the right side into dim / 24.
    """
    A = L.with_form(killing_form(L)) if use_killing else L
    rd = choose_positive(root_decomposition(A), functional)
    rho = weyl_vector(rd)
    data = casimir(rd.algebra)
    lhs = rd.norm2(rho)
    rhs = data.g_value * A.sdim / 12
    ctx = {
        "form": "killing" if use_killing else "constructor",
        "functional": _functional_ctx(functional),
        "g": qstr(data.g_value),
        "sdim": A.sdim,
        "rho": _wlist(rho),
    }
    return VerificationReport("strange", L.name, "", 1, lhs, rhs, ctx)


def _as_grading(L: LieSuperalgebra, G) -> Grading:
    if G is None:
        return trivial_grading(L)
    if isinstance(G, Grading):
        return G
    return grading_from_torus(L, G)


def verify_very_strange(L: LieSuperalgebra, G=None, functional=None) -> VerificationReport:
    """||rho_sigma||^2 against g (sdim / 12 - 2 z(g, sigma))."""
    G = _as_grading(L, G)
    data = casimir(L)
    sw = sigma_weyl_data(L, G, functional)
    rd = root_decomposition(L)
    lhs = rd.norm2(sw.rho_sigma)
    rhs = data.g_value * (Fraction(L.sdim, 12) - 2 * sw.z_value)
    ctx = {
        "functional": _functional_ctx(functional),
        "g": qstr(data.g_value),
        "sdim": L.sdim,
        "z": qstr(sw.z_value),
        "rho_sigma": _wlist(sw.rho_sigma),
        "h_plus": [sw.fixed.algebra.describe(v) for v in sw.fixed.h_plus],
    }
    return VerificationReport("very-strange", L.name, str(G.torus), G.order, lhs, rhs, ctx)


def _cartan_coords(L: LieSuperalgebra, v: Vec) -> Tuple[Fraction, ...]:
    pos = {h: a for a, h in enumerate(L.cartan)}
    out = [ZERO] * L.rank
    for k, x in v.items():
        if k not in pos:
            raise ValueError(f"{L.labels[k]} component lies outside the Cartan subalgebra")
        out[pos[k]] = x
    return tuple(out)


def sum_phase_brackets(L: LieSuperalgebra, G: Grading) -> Vec:
    """sum_i s_i [x^i, x_i] with s_i in [0, 1) the phase of x_i."""
    dual = dual_basis(L)
    acc: Vec = {}
    for i in range(L.dim):
        s = G.phase[i]
        if s:
            vaxpy(acc, L.bracket(dual[i], {i: ONE}), s)
    return acc


def verify_sumsixixi(L: LieSuperalgebra, G=None, functional=None) -> VerificationReport:
    """sum_i s_i [x^i, x_i] against sum over 0 < j < 1/2 of 2(1 - 2j) h_{rho^j}, in h."""
    G = _as_grading(L, G)
    rd = root_decomposition(L)
    lhs = _cartan_coords(L, sum_phase_brackets(L, G))
    sw = sigma_weyl_data(L, G, functional)
    acc: Vec = {}
    half = Fraction(1, 2)
    for j, rho in sw.rho_j.items():
        if 0 < j < half:
            vaxpy(acc, rd.h_of(rho), 2 * (1 - 2 * j))
    rhs = _cartan_coords(L, acc)
    ctx = {"functional": _functional_ctx(functional), "basis": [L.labels[h] for h in L.cartan]}
    return VerificationReport("sumsixixi", L.name, str(G.torus), G.order, lhs, rhs, ctx)


def verify_cg_orthogonality(L: LieSuperalgebra, G=None, functional=None) -> VerificationReport:
    """rho_sigma(C_g(h_{rho_sigma})) = 0."""
    G = _as_grading(L, G)
    data = casimir(L)
    rd = root_decomposition(L)
    sw = sigma_weyl_data(L, G, functional)
    h = rd.h_of(sw.rho_sigma)
    col = data.c_g @ to_dense(h, L.dim)
    image = {k: x for k, x in enumerate(col) if x}
    lhs = rd.evaluate(sw.rho_sigma, image)
    ctx = {"g": qstr(data.g_value), "c_g_zero": data.c_g.is_zero(),
           "rho_sigma": _wlist(sw.rho_sigma)}
    return VerificationReport("cg-orthogonality", L.name, str(G.torus), G.order, lhs, ZERO, ctx)


# ---------------------------------------------------------------------------
# even algebras with the Killing form


def affine_marks(rd: RootDatum) -> Tuple[List[Weight], List[int]]:
    """Simple roots and marks (1, a_1, ..., a_n) with theta = sum a_i alpha_i."""
    simple = simple_roots(rd)
    theta = highest_root(rd)
    coeffs = root_coordinates(rd, simple, theta)
    marks = [1]
    for c in coeffs:
        if c.denominator != 1 or c <= 0:
            raise SingularCartanSystem(f"highest root has coefficient {c}")
        marks.append(int(c))
    return simple, marks


def verify_even_vsf(L: LieSuperalgebra, s_labels: Sequence[int], m: Optional[int] = None,
                    functional=None) -> VerificationReport:
    """kappa(rho - lambda_s, rho - lambda_s) = dim/24 - (1/4m^2) sum_j j(m - j) dim g^j.

    ``s_labels`` = (s_0, ..., s_n); the torus element satisfies
    alpha_i(h_s) = s_i / m and lambda_s solves kappa(lambda_s, alpha_i) = s_i / (2m).
    """
    if L.odd:
        raise ValueError("the even formula needs a purely even algebra")
    K = killing_form(L)
    A = L.with_form(K)
    rd = choose_positive(root_decomposition(A), functional)
    simple, marks = affine_marks(rd)
    s = [int(x) for x in s_labels]
    if len(s) != len(simple) + 1:
        raise ValueError(f"expected {len(simple) + 1} labels s_0..s_{len(simple)}, got {len(s)}")
    if any(x < 0 for x in s):
        raise ValueError("labels must be nonnegative")
    mm = sum(a * x for a, x in zip(marks, s))
    if mm <= 0:
        raise ValueError("labels must not all vanish")
    if m is not None and int(m) != mm:
        raise ValueError(f"m = {m} differs from sum a_i s_i = {mm}")
    m = mm
    r = rd.rank
    if len(simple) != r:
        raise SingularCartanSystem("number of simple roots differs from the rank")
    S = QMatrix([list(a) for a in simple], cols=r)
    try:
        hs = solve(S, [Fraction(x, m) for x in s[1:]])
    except (ValueError, ZeroDivisionError):
        raise SingularCartanSystem("simple roots do not determine h_s") from None
    Kh = rd.form_on_hstar
    try:
        lam = solve(S @ Kh, [Fraction(x, 2 * m) for x in s[1:]])
    except (ValueError, ZeroDivisionError):
        raise SingularCartanSystem("simple-root Gram matrix is singular") from None
    G = grading_from_torus(A, TorusElement(tuple(hs)))
    rho = weyl_vector(rd)
    d = wsub(rho, tuple(lam))
    lhs = rd.norm2(d)
    tot = sum((j * (m - j) * G.dim(Fraction(j, m)) for j in range(1, m)), ZERO)
    rhs = Fraction(L.dim, 24) - tot / (4 * m * m)
    ctx = {
        "form": "killing",
        "labels": s,
        "marks": marks,
        "lambda_s": _wlist(lam),
        "rho": _wlist(rho),
        "dims": {qstr(j): len(ix) for j, ix in G.eigenspaces.items()},
    }
    return VerificationReport("even-vsf", L.name, str(G.torus), m, lhs, rhs, ctx)


def even_label_sets(L: LieSuperalgebra, max_m: int) -> List[Tuple[int, ...]]:
    """All label tuples (s_0, ..., s_n) with 1 <= sum a_i s_i <= max_m."""
    A = L.with_form(killing_form(L))
    _, marks = affine_marks(choose_positive(root_decomposition(A)))
    out: List[Tuple[int, ...]] = []

    def rec(i: int, acc: List[int], total: int):
        if i == len(marks):
            if total >= 1:
                out.append(tuple(acc))
            return
        x = 0
        while total + marks[i] * x <= max_m:
            rec(i + 1, acc + [x], total + marks[i] * x)
            x += 1

    rec(0, [], 0)
    return out


# ---------------------------------------------------------------------------


def scale_invariance_check(L: LieSuperalgebra, c, G=None) -> bool:
    """Under B -> cB the verdicts are unchanged and both sides divide by c."""
    c = Q(c)
    Lc = L.scaled(c)
    pairs = [(verify_strange(L), verify_strange(Lc))]
    if G is not None:
        Gc = grading_from_torus(Lc, _as_grading(L, G).torus)
        pairs.append((verify_very_strange(L, G), verify_very_strange(Lc, Gc)))
        pairs.append((verify_sumsixixi(L, G), verify_sumsixixi(Lc, Gc)))
    for a, b in pairs:
        if a.passed != b.passed:
            return False
        for x, y in ((a.lhs, b.lhs), (a.rhs, b.rhs)):
            if isinstance(x, tuple):
                if tuple(v / c for v in x) != y:
                    return False
            elif x / c != y:
                return False
    return True


FORMULAS = {
    "strange": verify_strange,
    "very-strange": verify_very_strange,
    "sumsixixi": verify_sumsixixi,
    "cg-orthogonality": verify_cg_orthogonality,
    "even-vsf": verify_even_vsf,
}
