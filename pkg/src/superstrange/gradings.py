"""Inner torus gradings, the twisted Weyl vector rho_sigma and z(g, sigma)."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Dict, List, Optional, Tuple

from .decomposition import TriangularData, _monic, triangular
from .errors import DecomposableAlgebra, NotWeightBasis, SpectrumNotRational
from .exact import ONE, ZERO, Echelon, Q, Vec, phase, qstr, rational_spectrum_split
from .structure import Weight, casimir, casimir_operator, root_decomposition
from .superalgebra import LieSuperalgebra, fixed_point_subalgebra


@dataclass(frozen=True)
class TorusElement:
    """h_s = sum_a coords[a] * h_a over the Cartan basis."""

    coords: Tuple[Fraction, ...]

    @classmethod
    def parse(cls, text: str) -> "TorusElement":
        text = text.strip()
        if not text:
            return cls(())
        return cls(tuple(Q(t.strip()) for t in text.split(",")))

    @classmethod
    def zero(cls, rank: int) -> "TorusElement":
        return cls((ZERO,) * rank)

    def __str__(self) -> str:
        return ",".join(qstr(c) for c in self.coords)

    def vector(self, L: LieSuperalgebra) -> Vec:
        if len(self.coords) != L.rank:
            raise ValueError(f"torus element needs {L.rank} coordinates, got {len(self.coords)}")
        return {h: c for h, c in zip(L.cartan, self.coords) if c}


@dataclass(frozen=True)
class Grading:
    algebra: LieSuperalgebra
    torus: TorusElement
    phase: Tuple[Fraction, ...]

    @property
    def eigenspaces(self) -> Dict[Fraction, Tuple[int, ...]]:
        out: Dict[Fraction, List[int]] = {}
        for k, p in enumerate(self.phase):
            out.setdefault(p, []).append(k)
        return {p: tuple(out[p]) for p in sorted(out)}

    @property
    def order(self) -> int:
        return lcm(*(p.denominator for p in self.phase)) if self.phase else 1

    def dim(self, j) -> int:
        j = phase(j)
        return sum(1 for p in self.phase if p == j)

    def sdim(self, j) -> int:
        j = phase(j)
        return sum(-1 if self.algebra.parity[k] else 1 for k, p in enumerate(self.phase) if p == j)

    def describe(self) -> str:
        return f"h_s=({self.torus}),m={self.order}"

    def compatibility(self) -> List[str]:
        """Violations of bracket, form and parity compatibility (empty when valid)."""
        L = self.algebra
        ph = self.phase
        issues = []
        for (i, j), v in L.structure_constants.items():
            target = phase(ph[i] + ph[j])
            if any(ph[k] != target for k in v):
                issues.append(f"bracket [{L.labels[i]},{L.labels[j]}] leaves g^{qstr(target)}")
        B = L.form
        for i in range(L.dim):
            for j in range(L.dim):
                if B[i, j] and phase(ph[i] + ph[j]) != 0:
                    issues.append(f"form pairs {L.labels[i]} and {L.labels[j]}")
        return issues


def grading_from_torus(L: LieSuperalgebra, h_s) -> Grading:
    """Eigenspace grading of exp(2 pi i ad h_s): basis vector x_mu gets phase mu(h_s) mod 1."""
    t = h_s if isinstance(h_s, TorusElement) else TorusElement(tuple(Q(x) for x in h_s))
    hv = t.vector(L)
    phases = []
    for k in range(L.dim):
        v = L.bracket(hv, {k: ONE})
        if any(i != k for i in v):
            raise NotWeightBasis(f"{L.labels[k]} is not an eigenvector of ad h_s")
        phases.append(phase(v.get(k, ZERO)))
    return Grading(L, t, tuple(phases))


def trivial_grading(L: LieSuperalgebra) -> Grading:
    return grading_from_torus(L, TorusElement.zero(L.rank))


def sample_torus(rank: int, rng: random.Random) -> TorusElement:
    """Coordinates p/q with p uniform in [-3, 3] and q uniform in 1..6."""
    return TorusElement(tuple(Fraction(rng.randint(-3, 3), rng.randint(1, 6)) for _ in range(rank)))


def sample_tori(L: LieSuperalgebra, count: int, seed: int) -> List[TorusElement]:
    rng = random.Random(seed)
    return [sample_torus(L.rank, rng) for _ in range(count)]


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SigmaWeylData:
    grading: Grading
    rho_j: Dict[Fraction, Weight]
    rho_sigma: Weight
    z_value: Fraction
    fixed: TriangularData

    def to_dict(self) -> dict:
        return {
            "rho_j": {qstr(j): [qstr(x) for x in w] for j, w in self.rho_j.items()},
            "rho_sigma": [qstr(x) for x in self.rho_sigma],
            "z": qstr(self.z_value),
        }


def _fixed_seed(L: LieSuperalgebra, g0: LieSuperalgebra, G: Grading) -> Optional[List[Vec]]:
    """Omega(g^0) in the coordinates of g^0, when the Casimir correction is nonzero."""
    try:
        data = casimir(L)
    except DecomposableAlgebra:
        return None
    if data.c_g.is_zero():
        return None
    idx = [k for k in range(L.dim) if G.phase[k] == 0]
    pos = {k: a for a, k in enumerate(idx)}
    out = []
    for k in idx:
        col = {i: x for i, x in enumerate(data.omega.col(k)) if x}
        if col:
            out.append({pos[i]: x for i, x in col.items()})
    return [_monic(v) for v in Echelon(out).basis]


def sigma_weyl_data(L: LieSuperalgebra, G: Grading, functional=None) -> SigmaWeylData:
    """rho^j for every phase, rho_sigma and z(g, sigma).

    rho^0 comes from the nilradical n of the triangular decomposition of the
    fixed-point subalgebra; for j != 0 the sum runs over all weights of g^j.
    """
    key = ("sigma", G.phase, None if functional is None else tuple(Q(x) for x in functional))
    hit = L._cache.get(key)
    if hit is not None:
        return hit
    rd = root_decomposition(L)
    if rd.algebra is not L:
        raise NotWeightBasis("grading must be built on a weight basis")
    g0 = fixed_point_subalgebra(L, G)
    T = triangular(g0, _fixed_seed(L, g0, G), functional)
    r = L.rank
    rho0 = [ZERO] * r
    for w, par in T.n_weights:
        s = -1 if par else 1
        for a in range(r):
            rho0[a] += s * w[a]
    rho_j: Dict[Fraction, Weight] = {ZERO: tuple(x / 2 for x in rho0)}
    for j, idx in G.eigenspaces.items():
        if j == 0:
            continue
        acc = [ZERO] * r
        for k in idx:
            s = -1 if L.parity[k] else 1
            for a in range(r):
                acc[a] += s * rd.weights[k][a]
        rho_j[j] = tuple(x / 2 for x in acc)
    rs = [ZERO] * r
    half = Fraction(1, 2)
    for j, w in rho_j.items():
        if j <= half:
            for a in range(r):
                rs[a] += (1 - 2 * j) * w[a]
    z = sum((j * (1 - j) / 2 * G.sdim(j) for j in G.eigenspaces), ZERO) / 2
    out = SigmaWeylData(G, rho_j, tuple(rs), z, T)
    L._cache[key] = out
    return out


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ScreenReport:
    passed: bool
    single_eigenvalue: bool
    form_compatible: bool
    eigenvalues: Tuple[Fraction, ...]
    detail: str = ""

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "single_eigenvalue": self.single_eigenvalue,
            "form_compatible": self.form_compatible,
            "eigenvalues": [qstr(e) for e in self.eigenvalues],
            "detail": self.detail,
        }


def indecomposability_screen(L: LieSuperalgebra, G: Optional[Grading] = None) -> ScreenReport:
    """Necessary conditions for sigma to be indecomposable.

    (a) the Casimir operator has a single eigenvalue, (b) the grading is
    compatible with the bracket and the form.  Passing is not a proof.
    """
    try:
        eigs = tuple(l for l, _ in rational_spectrum_split(casimir_operator(L)))
    except SpectrumNotRational as exc:
        return ScreenReport(False, False, True, (), str(exc))
    single = len(eigs) <= 1
    issues = G.compatibility() if G is not None else []
    detail = []
    if not single:
        detail.append("Casimir has eigenvalues " + ", ".join(qstr(e) for e in eigs))
    detail += issues[:3]
    return ScreenReport(single and not issues, single, not issues, eigs, "; ".join(detail))
