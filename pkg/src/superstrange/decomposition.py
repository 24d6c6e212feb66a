"""Isotypic analysis of the odd part, derived towers and the triangular decomposition."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import DecomposableAlgebra, IsotropicSeedInvalid, NotCompletelyReducible
from .exact import (
    ONE,
    ZERO,
    Echelon,
    QMatrix,
    Vec,
    as_sparse,
    combine,
    gram,
    intersect,
    inverse,
    kernel,
    vaxpy,
    vscale,
)
from .structure import (
    RootDatum,
    Weight,
    casimir,
    choose_positive,
    compare_positive,
    is_zero_weight,
    root_decomposition,
    wscale,
    wsub,
)
from .superalgebra import LieSuperalgebra


def _positive_datum(L: LieSuperalgebra, functional=None) -> RootDatum:
    return choose_positive(root_decomposition(L), functional)


def _weight_of(rd: RootDatum, v: Vec) -> Weight:
    ws = {rd.weights[k] for k in v}
    if len(ws) != 1:
        raise ValueError("vector is not a weight vector")
    return next(iter(ws))


def _weight_spaces(rd: RootDatum, parity: int) -> Dict[Weight, List[int]]:
    A = rd.algebra
    out: Dict[Weight, List[int]] = {}
    for k in range(A.dim):
        if A.parity[k] == parity:
            out.setdefault(rd.weights[k], []).append(k)
    return out


# ---------------------------------------------------------------------------
# isotypic decomposition of g_1


@dataclass(frozen=True)
class IsotypicComponent:
    """Highest weight, a basis of highest-weight vectors, and dim V(weight)."""

    weight: Weight
    highest_vectors: Tuple[Vec, ...]
    module_dim: int

    @property
    def multiplicity(self) -> int:
        return len(self.highest_vectors)


@dataclass(frozen=True)
class IsotypicDecomposition:
    root_datum: RootDatum
    components: Tuple[IsotypicComponent, ...]
    trivial_part: Dict[Weight, Tuple[Vec, ...]]
    lambda_plus: Tuple[Weight, ...]
    lambda_minus: Tuple[Weight, ...]

    @property
    def m_triv(self) -> List[Vec]:
        return [v for w in sorted(self.trivial_part) for v in self.trivial_part[w]]

    @property
    def m_zero(self) -> Tuple[Vec, ...]:
        return self.trivial_part.get(tuple(ZERO for _ in range(self.root_datum.rank)), ())


def _even_root_vectors(rd: RootDatum, sign: int) -> List[int]:
    A = rd.algebra
    return [k for k in range(A.dim)
            if A.parity[k] == 0 and not is_zero_weight(rd.weights[k])
            and (rd.weights[k] in rd.positive) == (sign > 0)]


def isotypic_g1(L: LieSuperalgebra, rd: Optional[RootDatum] = None) -> IsotypicDecomposition:
    """Split g_1 into g_0-irreducibles via highest-weight vectors.

    Highest-weight vectors of weight mu are the joint kernel of all positive
    even root vectors on the odd weight space of weight mu; each one is
    lowered by the negative even root vectors to measure dim V(mu).
    """
    rd = rd or _positive_datum(L)
    A = rd.algebra
    raising = _even_root_vectors(rd, +1)
    lowering = _even_root_vectors(rd, -1)
    table = A.ad_table
    components: List[IsotypicComponent] = []
    span_all = Echelon()
    odd_total = len(A.odd)
    for mu, idx in sorted(_weight_spaces(rd, 1).items()):
        # rows: coordinates of [e, x_k] stacked over all raising e
        rows: List[List[Fraction]] = []
        for e in raising:
            imgs = [table[e].get(k, {}) for k in idx]
            keys = sorted({t for im in imgs for t in im})
            for t in keys:
                rows.append([im.get(t, ZERO) for im in imgs])
        if rows:
            ker = kernel(QMatrix(rows, cols=len(idx)))
        else:
            ker = [tuple(ONE if a == b else ZERO for b in range(len(idx))) for a in range(len(idx))]
        if not ker:
            continue
        hws = tuple({idx[a]: c for a, c in enumerate(v) if c} for v in ker)
        dims = set()
        for hv in hws:
            module = Echelon([hv])
            frontier = [hv]
            while frontier:
                nxt = []
                for v in frontier:
                    for f in lowering:
                        w = A.bracket({f: ONE}, v)
                        if w and module.add(w):
                            nxt.append(w)
                frontier = nxt
            dims.add(len(module))
            for b in module.basis:
                span_all.add(b)
        if len(dims) != 1:
            raise NotCompletelyReducible(f"highest weight {mu} generates modules of different sizes")
        components.append(IsotypicComponent(mu, hws, dims.pop()))
    if len(span_all) != odd_total or sum(c.multiplicity * c.module_dim for c in components) != odd_total:
        raise NotCompletelyReducible(
            f"highest-weight modules span {len(span_all)} of {odd_total} odd dimensions")
    trivial = {c.weight: c.highest_vectors for c in components if c.module_dim == 1}
    nonzero = [w for w in trivial if not is_zero_weight(w)]
    lplus = tuple(sorted((w for w in nonzero if compare_positive(rd.functional, w)), reverse=True))
    lminus = tuple(sorted((w for w in nonzero if not compare_positive(rd.functional, w)), reverse=True))
    if sorted(lminus) != sorted(wscale(w, -1) for w in lplus):
        raise NotCompletelyReducible("trivial-isotypic weights are not symmetric under negation")
    return IsotypicDecomposition(rd, tuple(components), trivial, lplus, lminus)


# ---------------------------------------------------------------------------
# derived towers


def _span_brackets(A: LieSuperalgebra, rd: RootDatum, left: Sequence[Vec], right: Sequence[Vec],
                   seed: Sequence[Vec] = ()) -> List[Vec]:
    buckets: Dict[Tuple[int, Weight], Echelon] = {}

    def put(v: Vec):
        key = (A.parity[next(iter(v))], rd.weights[next(iter(v))])
        buckets.setdefault(key, Echelon()).add(v)

    for v in seed:
        put(v)
    for a, u in enumerate(left):
        for b, w in enumerate(right):
            if right is left and b < a:
                continue
            v = A.bracket(u, w)
            if v:
                put(v)
    out: List[Vec] = []
    for key in sorted(buckets, key=lambda k: (k[0], tuple(-x for x in k[1]))):
        out += buckets[key].basis
    return out


def derived_towers(L: LieSuperalgebra, rd: Optional[RootDatum] = None) -> Tuple[List[Vec], List[Vec]]:
    """Homogeneous weight bases of g^(1) = [g, g] and g^(2) = [g^(1), g^(1)]."""
    rd = rd or root_decomposition(L)
    A = rd.algebra
    basis = [{k: ONE} for k in range(A.dim)]
    # nonzero-weight vectors are brackets with the Cartan, so only weight-zero needs work
    nonzero = [b for b in basis if not is_zero_weight(rd.weights[next(iter(b))])]
    byw: Dict[Weight, List[int]] = {}
    for k in range(A.dim):
        byw.setdefault(rd.weights[k], []).append(k)
    zero_parts: List[Vec] = []
    for i in range(A.dim):
        for j in byw.get(wscale(rd.weights[i], -1), []):
            if i <= j:
                v = A.bracket_basis(i, j)
                if v:
                    zero_parts.append(v)
    g1 = _span_brackets(A, rd, [], [], seed=nonzero + zero_parts)
    g2 = _span_brackets(A, rd, g1, g1)
    return g1, g2


# ---------------------------------------------------------------------------
# isotropic subspaces


def _q(form: QMatrix, u: Vec, v: Vec) -> Fraction:
    return gram([u], [v], form)[0, 0]


def _rational_sqrt(x: Fraction) -> Optional[Fraction]:
    from math import isqrt

    if x < 0:
        return None
    n, d = x.numerator, x.denominator
    a, b = isqrt(n), isqrt(d)
    if a * a == n and b * b == d:
        return Fraction(a, b)
    return None


def perp_within(form: QMatrix, W: Sequence[Vec], ambient: Sequence[Vec]) -> List[Vec]:
    """Basis of {v in span(ambient) : (w, v) = 0 for w in W}."""
    if not W:
        return list(ambient)
    G = gram(W, ambient, form)
    return [combine(c, ambient) for c in kernel(G)]


def find_isotropic_extension(form: QMatrix, W: Sequence[Vec], ambient: Sequence[Vec],
                             symmetric: bool = True) -> Optional[Vec]:
    """A vector v in span(ambient) ∩ W^perp, outside span(W), with (v, v) = 0.

    For a skew (odd) ambient every such vector is isotropic.  For a symmetric
    ambient the complement is diagonalized and pairs u + t w with a rational
    t solving q(u) + t^2 q(w) = 0 are tried.  Returns None when the search
    finds nothing; over Q that does not prove maximality.
    """
    cand = perp_within(form, W, ambient)
    ech = Echelon(W)
    rest = [v for v in cand if ech.add(v)]
    if not rest:
        return None
    if not symmetric:
        return rest[0]
    diag: List[Tuple[Vec, Fraction]] = []
    for v in rest:
        v = dict(v)
        for u, qu in diag:
            c = _q(form, u, v) / qu
            vaxpy(v, u, -c)
        if Echelon(W).contains(v) or not v:
            continue
        qv = _q(form, v, v)
        if qv == 0:
            return v
        diag.append((v, qv))
    for a in range(len(diag)):
        for b in range(a + 1, len(diag)):
            (u, qu), (w, qw) = diag[a], diag[b]
            t = _rational_sqrt(-qu / qw)
            if t is not None:
                out = dict(u)
                vaxpy(out, w, t)
                return out
    return None


def greedy_isotropic(form: QMatrix, ambient: Sequence[Vec], seed: Sequence[Vec] = (),
                     symmetric: bool = True) -> List[Vec]:
    """Extend an isotropic seed inside span(ambient) until the search stalls."""
    W = list(seed)
    while True:
        v = find_isotropic_extension(form, W, ambient, symmetric)
        if v is None:
            return W
        W.append(v)


def polarize(form: QMatrix, space: Sequence[Vec]) -> Tuple[List[Vec], List[Vec]]:
    """Split a nondegenerate skew space into dual Lagrangians M+ and M-.

    Returns bases (e_i) and (f_i) with (e_i, f_j) = delta_ij.
    """
    rest = [dict(v) for v in space]
    plus: List[Vec] = []
    minus: List[Vec] = []
    while rest:
        u = rest.pop(0)
        if not u:
            continue
        partner = None
        for k, w in enumerate(rest):
            if _q(form, u, w):
                partner = rest.pop(k)
                break
        if partner is None:
            raise NotCompletelyReducible("form is degenerate on the weight-zero trivial part")
        partner = vscale(partner, 1 / _q(form, u, partner))
        plus.append(u)
        minus.append(partner)
        new = []
        for v in rest:
            b = _q(form, u, v)
            a = _q(form, partner, v) / _q(form, partner, u)
            v = dict(v)
            vaxpy(v, partner, -b)
            vaxpy(v, u, -a)
            if v:
                new.append(v)
        rest = new
    return plus, minus


def _dual_in(form: QMatrix, E: Sequence[Vec], F: Sequence[Vec]) -> List[Vec]:
    """Basis of span(F) dual to E: (e_i, f_j) = delta_ij."""
    G = gram(E, F, form)
    Ginv = inverse(G)
    return [combine([Ginv[k, j] for k in range(len(F))], F) for j in range(len(E))]


@dataclass(frozen=True)
class Certificate:
    isotropic: bool
    dim: int
    target: int
    maximal: Optional[bool]
    status: str
    witness: Optional[Vec] = None

    def to_dict(self) -> dict:
        return {"isotropic": self.isotropic, "dim": self.dim, "target": self.target,
                "maximal": self.maximal, "status": self.status}


def isotropy_certificate(L: LieSuperalgebra, W: Sequence) -> Certificate:
    """Check (W, W) = 0 and compare dim W with the largest possible isotropic dimension.

    The bound floor(dim g_0 / 2) + dim g_1 / 2 is attained over an algebraically
    closed field; reaching it certifies maximality.  Below the bound the
    certificate reports an explicit extension vector when the greedy search
    finds one, and otherwise leaves maximality undecided.
    """
    W = Echelon([as_sparse(w) for w in W]).basis
    target = len(L.even) // 2 + len(L.odd) // 2
    G = gram(W, W, L.form)
    if not G.is_zero():
        return Certificate(False, len(W), target, False, "not isotropic")
    if len(W) == target:
        return Certificate(True, len(W), target, True, "maximal isotropic")
    if len(W) > target:
        return Certificate(True, len(W), target, True, "isotropic")
    if all(L.vector_parity(w) is not None for w in W):
        even = [w for w in W if L.vector_parity(w) == 0]
        odd = [w for w in W if L.vector_parity(w) == 1]
        for par, part, sym in ((1, odd, False), (0, even, True)):
            amb = [{k: ONE} for k in range(L.dim) if L.parity[k] == par]
            v = find_isotropic_extension(L.form, part, amb, sym)
            if v is not None and not gram([v], W, L.form).is_zero():
                v = None
            if v is not None:
                return Certificate(True, len(W), target, False, "isotropic; extendable", v)
    return Certificate(True, len(W), target, None, "isotropic; maximality not certified over Q")


# ---------------------------------------------------------------------------
# triangular decomposition


@dataclass(frozen=True)
class GeneratorPair:
    kind: str  # "root" for the e_j, f_j; "triv" for the e^lambda_i, f^lambda_i
    weight: Weight
    e: Vec
    f: Vec


@dataclass(frozen=True)
class StructuralCheck:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class TriangularData:
    algebra: LieSuperalgebra
    root_datum: RootDatum
    isotypic: IsotypicDecomposition
    n_basis: List[Vec]
    h_basis: List[Vec]
    n_minus_basis: List[Vec]
    h_plus: List[Vec]
    derived_series: Tuple[List[Vec], List[Vec]]
    polarization: Tuple[List[Vec], List[Vec]]
    generators: List[GeneratorPair]
    h_prime: List[Vec]
    _checks: Optional[List[StructuralCheck]] = field(default=None, repr=False)

    @property
    def n_weights(self) -> List[Tuple[Weight, int]]:
        """(weight, parity) of each n basis vector."""
        A = self.algebra
        return [(_weight_of(self.root_datum, v), A.parity[next(iter(v))]) for v in self.n_basis]

    def certificate(self) -> Certificate:
        return isotropy_certificate(self.algebra, self.h_plus + self.n_basis)

    def checks(self) -> List[StructuralCheck]:
        if self._checks is None:
            self._checks = _run_checks(self)
        return self._checks

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks())

    def to_dict(self) -> dict:
        A = self.algebra
        d = A.describe
        return {
            "algebra": A.name,
            "n": [d(v) for v in self.n_basis],
            "h": [d(v) for v in self.h_basis],
            "n_minus": [d(v) for v in self.n_minus_basis],
            "h_plus": [d(v) for v in self.h_plus],
            "g1": [d(v) for v in self.derived_series[0]],
            "g2": [d(v) for v in self.derived_series[1]],
            "m_plus": [d(v) for v in self.polarization[0]],
            "m_minus": [d(v) for v in self.polarization[1]],
            "m_triv": {
                _wstr(w): [d(v) for v in vs] for w, vs in sorted(self.isotypic.trivial_part.items())
            },
            "components": [
                {"weight": _wstr(c.weight), "multiplicity": c.multiplicity, "dim": c.module_dim}
                for c in self.isotypic.components
            ],
            "certificate": self.certificate().to_dict(),
            "checks": {c.name: c.passed for c in self.checks()},
        }


def _wstr(w: Weight) -> str:
    from .exact import qstr

    return "(" + ",".join(qstr(x) for x in w) + ")"


def _casimir_seed(A: LieSuperalgebra) -> List[Vec]:
    try:
        data = casimir(A)
    except DecomposableAlgebra:
        return []
    if data.c_g.is_zero():
        return []
    return [_monic(v) for v in data.c_g_image()]


def _monic(v: Vec) -> Vec:
    return vscale(v, 1 / v[min(v)])


def triangular(L: LieSuperalgebra, h_plus_seed: Optional[Sequence] = None,
               functional=None) -> TriangularData:
    """Triangular decomposition g = n + h + n_- built from the isotypic data.

    n is the span of the positive even root vectors, a Lagrangian M+ of the
    weight-zero trivial part, the trivial parts of weight in Lambda+, and the
    positive-weight part of the odd piece of g^(2).  The isotropic h+ is grown
    greedily from ``h_plus_seed``; without a seed, the image of C_g is used
    when it is nonzero.
    """
    rd = _positive_datum(L, functional)
    A = rd.algebra
    iso = isotypic_g1(A, rd)
    g1, g2 = derived_towers(A, rd)
    pos = rd.positive

    def sign(v: Vec) -> int:
        w = rd.weights[next(iter(v))]
        if is_zero_weight(w):
            return 0
        return 1 if w in pos else -1

    even_pos = [{k: ONE} for k in _even_root_vectors(rd, +1)]
    even_neg = [{k: ONE} for k in _even_root_vectors(rd, -1)]
    g2_odd = [v for v in g2 if A.parity[next(iter(v))] == 1]
    g2_pos = [v for v in g2_odd if sign(v) > 0]
    g2_neg = [v for v in g2_odd if sign(v) < 0]
    m_plus, m_minus = polarize(A.form, list(iso.m_zero))
    triv_pos = [v for w in iso.lambda_plus for v in iso.trivial_part[w]]
    triv_neg = [v for w in iso.lambda_minus for v in iso.trivial_part[w]]

    n = Echelon()
    for v in even_pos + m_plus + triv_pos + g2_pos:
        n.add(v)
    nm = Echelon()
    for v in even_neg + m_minus + triv_neg + g2_neg:
        nm.add(v)
    h = [{k: ONE} for k in A.cartan]

    # generators of the g^(2) part: simple roots among its positive weights
    core_pos: Dict[Weight, List[Vec]] = {}
    for v in even_pos + g2_pos:
        core_pos.setdefault(_weight_of(rd, v), []).append(v)
    core_neg: Dict[Weight, List[Vec]] = {}
    for v in even_neg + g2_neg:
        core_neg.setdefault(_weight_of(rd, v), []).append(v)
    P = set(core_pos)
    gens: List[GeneratorPair] = []
    for a in sorted(P, reverse=True):
        if any(wsub(a, b) in P for b in P if b != a):
            continue
        E = Echelon(core_pos[a]).basis
        F = _dual_in(A.form, E, Echelon(core_neg.get(wscale(a, -1), [])).basis)
        gens += [GeneratorPair("root", a, e, f) for e, f in zip(E, F)]
    for lam in iso.lambda_plus:
        E = list(iso.trivial_part[lam])
        F = _dual_in(A.form, E, list(iso.trivial_part[wscale(lam, -1)]))
        gens += [GeneratorPair("triv", lam, e, f) for e, f in zip(E, F)]
    zero = tuple(ZERO for _ in range(rd.rank))
    gens += [GeneratorPair("triv", zero, e, f) for e, f in zip(m_plus, m_minus)]

    # h+
    seed = [as_sparse(v) for v in h_plus_seed] if h_plus_seed is not None else _casimir_seed(A)
    seed = Echelon(seed).basis
    hspace = Echelon(h)
    if any(not hspace.contains(v) for v in seed):
        raise IsotropicSeedInvalid("seed is not contained in the Cartan subalgebra")
    if not gram(seed, seed, A.form).is_zero():
        raise IsotropicSeedInvalid("seed is not isotropic")
    h_plus = greedy_isotropic(A.form, h, seed)

    h_prime = intersect(h, g1)
    return TriangularData(A, rd, iso, n.basis, h, nm.basis, h_plus, (g1, g2),
                          (m_plus, m_minus), gens, h_prime)


def _run_checks(T: TriangularData) -> List[StructuralCheck]:
    A, rd = T.algebra, T.root_datum
    B = A.form
    out: List[StructuralCheck] = []
    n, h, nm = T.n_basis, T.h_basis, T.n_minus_basis

    total = Echelon()
    for v in n + h + nm:
        total.add(v)
    direct = len(n) + len(h) + len(nm) == A.dim == len(total)
    out.append(StructuralCheck("direct_sum", direct,
                               f"{len(n)} + {len(h)} + {len(nm)} vs {A.dim}, span {len(total)}"))

    def closed(S: List[Vec]) -> bool:
        ech = Echelon(S)
        return all(ech.contains(A.bracket(u, v)) for a, u in enumerate(S) for v in S[a:])

    out.append(StructuralCheck("n_subalgebra", closed(n)))
    out.append(StructuralCheck("n_minus_subalgebra", closed(nm)))
    out.append(StructuralCheck("n_isotropic", gram(n, n, B).is_zero()))
    out.append(StructuralCheck("n_minus_isotropic", gram(nm, nm, B).is_zero()))
    out.append(StructuralCheck("h_orthogonal_n", gram(h, n, B).is_zero() and gram(h, nm, B).is_zero()))
    P = gram(n, nm, B)
    paired = P.rows == P.cols and (P.rows == 0 or P.rank() == P.rows)
    out.append(StructuralCheck("n_pairing_nondegenerate", paired, f"{P.rows}x{P.cols}"))
    W = T.h_plus + n
    out.append(StructuralCheck("h_plus_n_isotropic", gram(W, W, B).is_zero(),
                               T.certificate().status))

    g2_odd = [v for v in T.derived_series[1] if A.parity[next(iter(v))] == 1]
    bad = [(x, y) for x in T.isotypic.m_triv for y in g2_odd if A.bracket(x, y)]
    out.append(StructuralCheck("m_triv_commutes_g2_odd", not bad,
                               f"{len(bad)} nonzero brackets"))

    fails = []
    for c in T.isotypic.components:
        if c.module_dim == 1:
            for hp in T.h_prime:
                if rd.evaluate(c.weight, hp):
                    fails.append(c.weight)
    out.append(StructuralCheck("one_dim_weights_vanish_on_h_prime", not fails, str(fails)))

    rel = []
    hspace = Echelon(h)
    for a, p in enumerate(T.generators):
        for b, q in enumerate(T.generators):
            v = A.bracket(p.e, q.f)
            if a != b:
                if v:
                    rel.append((p.kind, q.kind, "off-diagonal"))
            elif v != rd.h_of(p.weight):
                rel.append((p.kind, q.kind, "diagonal"))
            elif v and not hspace.contains(v):
                rel.append((p.kind, q.kind, "not in h"))
    out.append(StructuralCheck("generator_relations", not rel, str(rel[:3])))
    return out
