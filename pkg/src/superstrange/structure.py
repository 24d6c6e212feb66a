"""Root data, positive systems, Weyl vectors and the Casimir operator."""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Dict, FrozenSet, List, Mapping, Optional, Sequence, Tuple

from .errors import DecomposableAlgebra, NotDiagonalizable
from .exact import (
    ONE,
    ZERO,
    Coordinates,
    Echelon,
    QMatrix,
    Q,
    Vec,
    as_sparse,
    inverse,
    is_nilpotent,
    kernel,
    rational_spectrum_split,
    vaxpy,
)
from .superalgebra import LieSuperalgebra, dual_basis

Weight = Tuple[Fraction, ...]


def wadd(a: Weight, b: Weight) -> Weight:
    return tuple(x + y for x, y in zip(a, b))


def wsub(a: Weight, b: Weight) -> Weight:
    return tuple(x - y for x, y in zip(a, b))


def wscale(a: Weight, c) -> Weight:
    c = Q(c)
    return tuple(c * x for x in a)


def wzero(r: int) -> Weight:
    return (ZERO,) * r


def is_zero_weight(a: Weight) -> bool:
    return not any(a)


@dataclass(frozen=True)
class RootSpace:
    indices: Tuple[int, ...]
    sdim: int


@dataclass(frozen=True)
class RootDatum:
    """h-weight decomposition of an algebra whose basis is a weight basis.

    Weights are coordinate vectors ``(mu(h_1), ..., mu(h_r))`` over the
    Cartan basis.  ``form_on_hstar`` is the inverse Gram matrix of the form on
    h, so ``(lambda, mu) = lambda^T G^{-1} mu``.
    """

    algebra: LieSuperalgebra
    weights: Tuple[Weight, ...]
    roots: Dict[Weight, RootSpace]
    zero_space: Tuple[int, ...]
    form_on_hstar: QMatrix
    functional: Optional[Weight] = None
    positive: Optional[FrozenSet[Weight]] = None

    @property
    def rank(self) -> int:
        return self.algebra.rank

    def pair(self, a: Weight, b: Weight) -> Fraction:
        G = self.form_on_hstar
        r = len(a)
        tot = ZERO
        for i in range(r):
            if a[i]:
                row = G.row(i)
                tot += a[i] * sum((row[j] * b[j] for j in range(r) if b[j]), ZERO)
        return tot

    def norm2(self, a: Weight) -> Fraction:
        return self.pair(a, a)

    def h_of(self, lam: Weight) -> Vec:
        """h_lambda as an algebra vector: (h_lambda, h) = lambda(h)."""
        c = self.form_on_hstar @ lam
        return {self.algebra.cartan[a]: x for a, x in enumerate(c) if x}

    def evaluate(self, lam: Weight, v: Mapping[int, Fraction]) -> Fraction:
        """lambda(v) for v supported on the Cartan basis."""
        pos = {h: a for a, h in enumerate(self.algebra.cartan)}
        tot = ZERO
        for k, x in v.items():
            if k not in pos:
                raise ValueError("vector is not in the Cartan subalgebra")
            tot += x * lam[pos[k]]
        return tot

    def is_positive(self, a: Weight) -> bool:
        if self.positive is None:
            raise ValueError("no positive system chosen")
        return a in self.positive

    @property
    def positive_roots(self) -> List[Weight]:
        if self.positive is None:
            raise ValueError("no positive system chosen")
        return sorted(self.positive, reverse=True)

    def root_vectors(self, a: Weight) -> Tuple[int, ...]:
        rs = self.roots.get(a)
        return rs.indices if rs else ()


def _weights_diagonal(L: LieSuperalgebra) -> Optional[Tuple[Weight, ...]]:
    table = L.ad_table
    out = []
    for k in range(L.dim):
        w = []
        for h in L.cartan:
            v = table[h].get(k)
            if not v:
                w.append(ZERO)
            elif set(v) == {k}:
                w.append(v[k])
            else:
                return None
        out.append(tuple(w))
    return tuple(out)


def change_basis(L: LieSuperalgebra, basis: Sequence[Mapping[int, Fraction]],
                 labels: Sequence[str], cartan: Sequence[int]) -> LieSuperalgebra:
    """Same algebra expressed in a new homogeneous basis (sparse old coordinates)."""
    basis = [as_sparse(b) for b in basis]
    coords = Coordinates(basis)
    parity = []
    for b in basis:
        p = L.vector_parity(b)
        if p is None:
            raise ValueError("new basis vectors must be homogeneous and nonzero")
        parity.append(p)
    table = {}
    n = len(basis)
    for a in range(n):
        for c in range(a, n):
            v = L.bracket(basis[a], basis[c])
            if v:
                table[(a, c)] = coords(v)
    form = [[L.pair(basis[a], basis[c]) for c in range(n)] for a in range(n)]
    return LieSuperalgebra(labels, parity, table, QMatrix(form, cols=n), cartan, L.name)


def _restricted(L: LieSuperalgebra, h: int, space: List[Vec]) -> QMatrix:
    coords = Coordinates(space)
    cols = [coords(L.bracket({h: ONE}, v)) for v in space]
    d = len(space)
    return QMatrix([[cols[j].get(i, ZERO) for j in range(d)] for i in range(d)], cols=d)


def _weight_realign(L: LieSuperalgebra) -> LieSuperalgebra:
    """Rebase L onto simultaneous eigenvectors of its Cartan elements."""
    for h in L.cartan:
        for h2 in L.cartan:
            if L.bracket_basis(h, h2):
                raise NotDiagonalizable("Cartan elements do not commute")
    pieces: List[Tuple[Weight, List[Vec]]] = []
    for par in (0, 1):
        spaces: List[Tuple[Weight, List[Vec]]] = [
            ((), [{i: ONE} for i in range(L.dim) if L.parity[i] == par])]
        for h in L.cartan:
            refined = []
            for w, sp in spaces:
                if not sp:
                    continue
                M = _restricted(L, h, sp)
                for lam, gen in rational_spectrum_split(M):
                    eig = kernel(M - QMatrix.identity(M.rows).scale(lam))
                    if len(eig) != len(gen):
                        raise NotDiagonalizable(f"{L.labels[h]} acts non-semisimply")
                    vecs = []
                    for c in eig:
                        acc: Vec = {}
                        for x, v in zip(c, sp):
                            vaxpy(acc, v, x)
                        vecs.append(acc)
                    refined.append((w + (lam,), vecs))
            spaces = refined
        pieces += [(w, sp) for w, sp in spaces if sp]
    r = len(L.cartan)
    new: List[Vec] = [{h: ONE} for h in L.cartan]
    ech = Echelon(new)
    rest = []
    for w, sp in pieces:
        for v in sp:
            if w == wzero(r) and L.vector_parity(v) == 0:
                if ech.add(v):
                    rest.append(v)
            else:
                rest.append(v)
    basis = new + rest
    labels = [L.labels[h] for h in L.cartan] + [f"y{i + 1}" for i in range(len(rest))]
    return change_basis(L, basis, labels, list(range(r)))


def root_decomposition(L: LieSuperalgebra) -> RootDatum:
    """Simultaneous eigenspace decomposition of L under its Cartan.

    When the basis is not a weight basis the algebra is first rebased; the
    returned datum then refers to the rebased algebra (``rd.algebra``).
    """
    hit = L._cache.get("roots")
    if hit is not None:
        return hit
    weights = _weights_diagonal(L)
    A = L
    if weights is None:
        A = _weight_realign(L)
        weights = _weights_diagonal(A)
    r = A.rank
    roots: Dict[Weight, List[int]] = {}
    zero = []
    for k, w in enumerate(weights):
        if is_zero_weight(w):
            zero.append(k)
        else:
            roots.setdefault(w, []).append(k)
    rs = {
        w: RootSpace(tuple(ix), sum(1 if A.parity[k] == 0 else -1 for k in ix))
        for w, ix in roots.items()
    }
    if r:
        G = A.form.submatrix(A.cartan, A.cartan)
        try:
            Ginv = inverse(G)
        except ZeroDivisionError:
            raise NotDiagonalizable("form restricted to the Cartan is degenerate") from None
    else:
        Ginv = QMatrix.zeros(0)
    rd = RootDatum(A, tuple(weights), rs, tuple(zero), Ginv)
    L._cache["roots"] = rd
    return rd


def _positive_key(functional: Optional[Weight], a: Weight) -> Tuple[Fraction, ...]:
    lead = sum((f * x for f, x in zip(functional, a)), ZERO) if functional else ZERO
    return (lead,) + tuple(a)


def compare_positive(functional: Optional[Weight], a: Weight) -> bool:
    """a > 0 for the functional, ties broken lexicographically on coordinates."""
    for x in _positive_key(functional, a):
        if x:
            return x > 0
    return False


def choose_positive(rd: RootDatum, functional: Optional[Sequence] = None) -> RootDatum:
    """Positive system {alpha : functional(alpha) > 0}.

    Roots on which the functional vanishes are decided by the first nonzero
    Cartan coordinate, the exact form of perturbing by (eps, eps^2, ...).
    """
    f = tuple(Q(x) for x in functional) if functional is not None else None
    if f is not None and len(f) != rd.rank:
        raise ValueError(f"functional needs {rd.rank} coordinates")
    pos = frozenset(a for a in rd.roots if compare_positive(f, a))
    return replace(rd, functional=f, positive=pos)


def weyl_vector(rd: RootDatum) -> Weight:
    """rho = 1/2 sum over positive roots of sdim(g_alpha) * alpha."""
    if rd.positive is None:
        rd = choose_positive(rd)
    acc = [ZERO] * rd.rank
    for a in rd.positive:
        s = rd.roots[a].sdim
        for i, x in enumerate(a):
            acc[i] += s * x
    return tuple(x / 2 for x in acc)


def simple_roots(rd: RootDatum) -> List[Weight]:
    """Positive roots that are not a sum of two positive roots."""
    if rd.positive is None:
        rd = choose_positive(rd)
    pos = rd.positive
    out = []
    for a in pos:
        if not any(wsub(a, b) in pos for b in pos if b != a):
            out.append(a)
    return sorted(out, reverse=True)


def root_coordinates(rd: RootDatum, simple: Sequence[Weight], a: Weight) -> Tuple[Fraction, ...]:
    """Coefficients of a in the basis of simple roots."""
    from .exact import solve

    M = QMatrix.from_columns(simple, rd.rank)
    return solve(M, a)


def highest_root(rd: RootDatum) -> Weight:
    simple = simple_roots(rd)
    return max(rd.positive, key=lambda a: (sum(root_coordinates(rd, simple, a)), a))


# ---------------------------------------------------------------------------
# Casimir


def casimir_operator(L: LieSuperalgebra) -> QMatrix:
    """Omega = sum_i ad(x^i) ad(x_i) on the adjoint representation."""
    hit = L._cache.get("omega")
    if hit is not None:
        return hit
    n = L.dim
    dual = dual_basis(L)
    table = L.ad_table
    cols = []
    for k in range(n):
        acc: Vec = {}
        for i in range(n):
            inner = table[i].get(k)
            if inner:
                vaxpy(acc, L.bracket(dual[i], inner), ONE)
        cols.append(acc)
    om = QMatrix([[cols[k].get(i, ZERO) for k in range(n)] for i in range(n)], cols=n)
    L._cache["omega"] = om
    return om


@dataclass(frozen=True)
class CasimirData:
    omega: QMatrix
    g_value: Fraction
    c_g: QMatrix
    nilpotent: bool

    @property
    def eigenvalue(self) -> Fraction:
        return 2 * self.g_value

    def c_g_image(self) -> List[Vec]:
        """Spanning family of the image of C_g (its nonzero columns)."""
        ech = Echelon()
        for j in range(self.c_g.cols):
            ech.add(as_sparse(self.c_g.col(j)))
        return ech.basis


def _scalar(M: QMatrix) -> Optional[Fraction]:
    if M.rows == 0:
        return ZERO
    c = M[0, 0]
    for i in range(M.rows):
        for j in range(M.cols):
            if M[i, j] != (c if i == j else ZERO):
                return None
    return c


def casimir(L: LieSuperalgebra) -> CasimirData:
    """Casimir operator, g = half its unique eigenvalue, and C_g = Omega - 2g I.

    Raises DecomposableAlgebra when Omega has several eigenvalues.
    """
    hit = L._cache.get("casimir")
    if isinstance(hit, Exception):
        raise hit
    if hit is not None:
        return hit
    om = casimir_operator(L)
    c = _scalar(om)
    if c is not None:
        eig = c
    else:
        spec = rational_spectrum_split(om)
        if len(spec) > 1:
            err = DecomposableAlgebra(
                f"Casimir of {L.name} has eigenvalues {[str(l) for l, _ in spec]}")
            L._cache["casimir"] = err
            raise err
        eig = spec[0][0]
    cg = om - QMatrix.identity(L.dim).scale(eig)
    data = CasimirData(om, eig / 2, cg, is_nilpotent(cg))
    L._cache["casimir"] = data
    return data


def casimir_symmetry_check(L: LieSuperalgebra) -> bool:
    """(Omega a, b) == (a, Omega b) on all basis pairs."""
    om = casimir_operator(L)
    B = L.form
    return om.T @ B == B @ om
