"""Exact rational scalars, dense matrices over Q and sparse vector helpers.

Rationals are :class:`fractions.Fraction` (always reduced, positive
denominator).  Matrices are immutable and dense; the products skip zero
entries, which is what keeps adjoint computations on ~40 dimensional
algebras cheap.
"""

from __future__ import annotations

from fractions import Fraction
from math import floor, gcd, isqrt
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple

from .errors import SpectrumNotRational

Rational = Fraction
Vec = Dict[int, Fraction]

ZERO = Fraction(0)
ONE = Fraction(1)


def Q(x) -> Fraction:
    """Coerce ints, Fractions and "p/q" strings to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floating point values are not accepted; use 'p/q' strings")
    return Fraction(x)


def qstr(x: Fraction) -> str:
    x = Q(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def phase(x) -> Fraction:
    """Representative of x + Z in [0, 1)."""
    x = Q(x)
    return x - floor(x)


# ---------------------------------------------------------------------------
# sparse vectors  {index: coefficient}, zero entries never stored


def vadd(u: Mapping[int, Fraction], v: Mapping[int, Fraction], c=ONE) -> Vec:
    out = dict(u)
    for k, x in v.items():
        y = out.get(k, ZERO) + c * x
        if y:
            out[k] = y
        else:
            out.pop(k, None)
    return out


def vscale(v: Mapping[int, Fraction], c) -> Vec:
    c = Q(c)
    if not c:
        return {}
    return {k: c * x for k, x in v.items()}


def vaxpy(acc: Vec, v: Mapping[int, Fraction], c) -> None:
    """In place acc += c*v."""
    if not c:
        return
    for k, x in v.items():
        y = acc.get(k, ZERO) + c * x
        if y:
            acc[k] = y
        else:
            del acc[k]


def as_sparse(v) -> Vec:
    if isinstance(v, Mapping):
        return {int(k): Q(x) for k, x in v.items() if x}
    return {i: Q(x) for i, x in enumerate(v) if x}


def to_dense(v: Mapping[int, Fraction], n: int) -> Tuple[Fraction, ...]:
    return tuple(v.get(i, ZERO) for i in range(n))


class Echelon:
    """Incrementally maintained echelon basis of a span of sparse vectors.

    Rows are normalised so that their pivot (smallest index) is 1.
    """

    def __init__(self, vectors: Iterable[Mapping[int, Fraction]] = ()):
        self.rows: Dict[int, Vec] = {}
        self.basis: List[Vec] = []
        for v in vectors:
            self.add(v)

    def __len__(self) -> int:
        return len(self.rows)

    def reduce(self, v: Mapping[int, Fraction]) -> Vec:
        v = {k: x for k, x in v.items() if x}
        rows = self.rows
        while True:
            hits = [k for k in v if k in rows]
            if not hits:
                return v
            k = min(hits)
            vaxpy(v, rows[k], -v[k])

    def add(self, v: Mapping[int, Fraction]) -> bool:
        """Add v to the span; return True if it was independent."""
        r = self.reduce(v)
        if not r:
            return False
        p = min(r)
        self.rows[p] = vscale(r, 1 / r[p])
        self.basis.append({k: x for k, x in v.items() if x})
        return True

    def contains(self, v: Mapping[int, Fraction]) -> bool:
        return not self.reduce(v)


def span_basis(vectors: Iterable[Mapping[int, Fraction]]) -> List[Vec]:
    """Independent subfamily of `vectors` with the same span (original vectors kept)."""
    return Echelon(vectors).basis


# ---------------------------------------------------------------------------
# dense matrices


class QMatrix:
    """Immutable dense matrix over Q."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, data: Sequence[Sequence], cols: int | None = None):
        data = tuple(tuple(Q(x) for x in row) for row in data)
        if cols is None:
            if not data:
                raise ValueError("cannot infer column count of an empty matrix")
            cols = len(data[0])
        if any(len(row) != cols for row in data):
            raise ValueError("ragged matrix")
        self.rows = len(data)
        self.cols = cols
        self._data = data

    @classmethod
    def _raw(cls, data, rows, cols) -> "QMatrix":
        m = object.__new__(cls)
        m._data = data
        m.rows = rows
        m.cols = cols
        return m

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> "QMatrix":
        cols = rows if cols is None else cols
        return cls._raw(tuple((ZERO,) * cols for _ in range(rows)), rows, cols)

    @classmethod
    def identity(cls, n: int) -> "QMatrix":
        return cls._raw(
            tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n)), n, n
        )

    @classmethod
    def diag(cls, entries: Sequence) -> "QMatrix":
        n = len(entries)
        return cls(
            [[entries[i] if i == j else 0 for j in range(n)] for i in range(n)], cols=n
        )

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int) -> "QMatrix":
        return cls([[c[i] for c in columns] for i in range(rows)], cols=len(columns))

    def __getitem__(self, ij):
        i, j = ij
        return self._data[i][j]

    def row(self, i: int) -> Tuple[Fraction, ...]:
        return self._data[i]

    def col(self, j: int) -> Tuple[Fraction, ...]:
        return tuple(r[j] for r in self._data)

    def tolist(self) -> List[List[Fraction]]:
        return [list(r) for r in self._data]

    @property
    def shape(self) -> Tuple[int, int]:
        return self.rows, self.cols

    @property
    def T(self) -> "QMatrix":
        return QMatrix._raw(tuple(zip(*self._data)) if self.rows else (), self.cols, self.rows)

    def __eq__(self, other) -> bool:
        return isinstance(other, QMatrix) and self.shape == other.shape and self._data == other._data

    def __hash__(self):
        return hash(self._data)

    def __repr__(self) -> str:
        body = "; ".join(" ".join(qstr(x) for x in r) for r in self._data)
        return f"QMatrix({self.rows}x{self.cols}: [{body}])"

    def is_zero(self) -> bool:
        return not any(any(r) for r in self._data)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def _check_same(self, other: "QMatrix"):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: "QMatrix") -> "QMatrix":
        self._check_same(other)
        return QMatrix._raw(
            tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self._data, other._data)),
            self.rows,
            self.cols,
        )

    def __sub__(self, other: "QMatrix") -> "QMatrix":
        self._check_same(other)
        return QMatrix._raw(
            tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self._data, other._data)),
            self.rows,
            self.cols,
        )

    def __neg__(self) -> "QMatrix":
        return self.scale(-1)

    def scale(self, c) -> "QMatrix":
        c = Q(c)
        return QMatrix._raw(tuple(tuple(c * a for a in r) for r in self._data), self.rows, self.cols)

    def __mul__(self, c) -> "QMatrix":
        return self.scale(c)

    __rmul__ = __mul__

    def __matmul__(self, other):
        if isinstance(other, QMatrix):
            return self._matmul(other)
        v = tuple(Q(x) for x in other)
        if len(v) != self.cols:
            raise ValueError("dimension mismatch")
        nz = [(j, x) for j, x in enumerate(v) if x]
        return tuple(sum((r[j] * x for j, x in nz), ZERO) for r in self._data)

    def _matmul(self, other: "QMatrix") -> "QMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        n = other.cols
        orows = [[(j, x) for j, x in enumerate(r) if x] for r in other._data]
        out = []
        for r in self._data:
            acc = [ZERO] * n
            for k, a in enumerate(r):
                if a:
                    for j, b in orows[k]:
                        acc[j] += a * b
            out.append(tuple(acc))
        return QMatrix._raw(tuple(out), self.rows, n)

    def __pow__(self, k: int) -> "QMatrix":
        if not self.is_square() or k < 0:
            raise ValueError("matrix power needs a square matrix and k >= 0")
        result = QMatrix.identity(self.rows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            k >>= 1
            if k:
                base = base @ base
        return result

    def trace(self) -> Fraction:
        return sum((self._data[i][i] for i in range(min(self.rows, self.cols))), ZERO)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "QMatrix":
        return QMatrix._raw(
            tuple(tuple(self._data[i][j] for j in cols) for i in rows), len(rows), len(cols)
        )

    # -- elimination -------------------------------------------------------

    def rref(self) -> Tuple["QMatrix", Tuple[int, ...]]:
        """Reduced row echelon form and pivot columns."""
        a = [list(r) for r in self._data]
        pivots = []
        r = 0
        for c in range(self.cols):
            p = next((i for i in range(r, self.rows) if a[i][c]), None)
            if p is None:
                continue
            a[r], a[p] = a[p], a[r]
            inv = 1 / a[r][c]
            a[r] = [x * inv for x in a[r]]
            nz = [(j, x) for j, x in enumerate(a[r]) if x]
            for i in range(self.rows):
                if i != r and a[i][c]:
                    f = a[i][c]
                    row = a[i]
                    for j, x in nz:
                        row[j] -= f * x
            pivots.append(c)
            r += 1
            if r == self.rows:
                break
        return QMatrix._raw(tuple(tuple(x) for x in a), self.rows, self.cols), tuple(pivots)

    def rank(self) -> int:
        return len(self.rref()[1])

    def kernel(self) -> List[Tuple[Fraction, ...]]:
        return kernel(self)

    def inverse(self) -> "QMatrix":
        return inverse(self)

    def solve(self, b: Sequence) -> Tuple[Fraction, ...]:
        return solve(self, b)

    def char_poly(self) -> List[Fraction]:
        return char_poly(self)


def kernel(M: QMatrix) -> List[Tuple[Fraction, ...]]:
    """Basis of {v : M v = 0}; one vector per free column of the RREF."""
    R, pivots = M.rref()
    free = [c for c in range(M.cols) if c not in pivots]
    basis = []
    for f in free:
        v = [ZERO] * M.cols
        v[f] = ONE
        for i, p in enumerate(pivots):
            v[p] = -R[i, f]
        basis.append(tuple(v))
    return basis


def solve(M: QMatrix, b: Sequence) -> Tuple[Fraction, ...]:
    """A particular solution of M x = b; ValueError if inconsistent."""
    aug = QMatrix([list(M.row(i)) + [b[i]] for i in range(M.rows)], cols=M.cols + 1)
    R, pivots = aug.rref()
    if M.cols in pivots:
        raise ValueError("inconsistent linear system")
    x = [ZERO] * M.cols
    for i, p in enumerate(pivots):
        x[p] = R[i, M.cols]
    return tuple(x)


def inverse(M: QMatrix) -> QMatrix:
    if not M.is_square():
        raise ValueError("inverse of a non-square matrix")
    n = M.rows
    aug = QMatrix(
        [list(M.row(i)) + [ONE if i == j else ZERO for j in range(n)] for i in range(n)],
        cols=2 * n,
    )
    R, pivots = aug.rref()
    if tuple(pivots[:n]) != tuple(range(n)):
        raise ZeroDivisionError("singular matrix")
    return R.submatrix(range(n), range(n, 2 * n))


def rank(M: QMatrix) -> int:
    return M.rank()


# ---------------------------------------------------------------------------
# characteristic polynomial and rational spectra


def char_poly(M: QMatrix) -> List[Fraction]:
    """Coefficients [c_0, ..., c_n] of det(t I - M), lowest degree first.

    Faddeev-LeVerrier: N_k = M N_{k-1} + c_{n-k+1} I and
    c_{n-k} = -tr(M N_k) / k.  Only divisions by the integers k occur.
    """
    if not M.is_square():
        raise ValueError("characteristic polynomial of a non-square matrix")
    n = M.rows
    coeffs = [ZERO] * (n + 1)
    coeffs[n] = ONE
    N = QMatrix.zeros(n)
    ident = QMatrix.identity(n)
    for k in range(1, n + 1):
        N = M @ N + ident.scale(coeffs[n - k + 1])
        coeffs[n - k] = -(M @ N).trace() / k
    return coeffs


def poly_eval_matrix(coeffs: Sequence[Fraction], M: QMatrix) -> QMatrix:
    """Horner evaluation of a polynomial (lowest degree first) at a square matrix."""
    n = M.rows
    acc = QMatrix.zeros(n)
    ident = QMatrix.identity(n)
    for c in reversed(coeffs):
        acc = acc @ M + ident.scale(c)
    return acc


def _trim(p: List[Fraction]) -> List[Fraction]:
    p = list(p)
    while p and not p[-1]:
        p.pop()
    return p


def _poly_divmod(a: Sequence[Fraction], b: Sequence[Fraction]):
    a = _trim(a)
    b = _trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [ZERO] * max(len(a) - len(b) + 1, 1)
    r = list(a)
    while len(r) >= len(b) and r:
        f = r[-1] / b[-1]
        shift = len(r) - len(b)
        q[shift] = f
        for i, c in enumerate(b):
            r[shift + i] -= f * c
        r = _trim(r)
    return q, r


def _poly_gcd(a, b) -> List[Fraction]:
    a, b = _trim(a), _trim(b)
    while b:
        _, r = _poly_divmod(a, b)
        a, b = b, r
    return [c / a[-1] for c in a] if a else a


def _divisors(n: int) -> List[int]:
    n = abs(n)
    small, large = [], []
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
    return small + large[::-1]


def rational_roots(coeffs: Sequence[Fraction]) -> Dict[Fraction, int]:
    """Rational roots with multiplicities of a polynomial (lowest degree first)."""
    p = _trim([Q(c) for c in coeffs])
    if not p:
        raise ValueError("zero polynomial")
    roots: Dict[Fraction, int] = {}
    k = 0
    while len(p) > 1 and not p[0]:
        p = p[1:]
        k += 1
    if k:
        roots[ZERO] = k
    if len(p) == 1:
        return roots
    deriv = [i * c for i, c in enumerate(p)][1:]
    g = _poly_gcd(p, deriv)
    sqfree, _ = _poly_divmod(p, g)
    sqfree = _trim(sqfree)
    den = 1
    for c in sqfree:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in sqfree]
    cont = 0
    for c in ints:
        cont = gcd(cont, c)
    ints = [c // cont for c in ints]
    for num in _divisors(ints[0]):
        for d in _divisors(ints[-1]):
            for cand in (Fraction(num, d), Fraction(-num, d)):
                if cand in roots:
                    continue
                if sum(c * cand**i for i, c in enumerate(ints)) == 0:
                    m = 0
                    rest = p
                    while True:
                        quo, rem = _poly_divmod(rest, [-cand, ONE])
                        if rem:
                            break
                        m += 1
                        rest = quo
                    roots[cand] = m
    return roots


def rational_spectrum_split(M: QMatrix) -> List[Tuple[Fraction, List[Tuple[Fraction, ...]]]]:
    """[(eigenvalue, basis of its generalized eigenspace)], eigenvalues ascending.

    Raises SpectrumNotRational when the rational roots of the characteristic
    polynomial do not account for the full dimension.
    """
    n = M.rows
    roots = rational_roots(char_poly(M))
    if sum(roots.values()) != n:
        raise SpectrumNotRational(
            f"rational eigenvalues {sorted(roots)} cover {sum(roots.values())} of {n} dimensions"
        )
    out = []
    ident = QMatrix.identity(n)
    for lam in sorted(roots):
        mult = roots[lam]
        N = M - ident.scale(lam)
        P = N
        basis = kernel(P)
        while len(basis) < mult:
            P = P @ N
            nxt = kernel(P)
            if len(nxt) == len(basis):
                break
            basis = nxt
        if len(basis) != mult:
            raise SpectrumNotRational(f"generalized eigenspace of {lam} has wrong dimension")
        out.append((lam, basis))
    return out


def is_nilpotent(M: QMatrix) -> bool:
    """Certify M^n = 0 (n = size) by repeated multiplication with early exit."""
    P = M
    for _ in range(M.rows):
        if P.is_zero():
            return True
        P = P @ M
    return P.is_zero()


def gram(vectors: Sequence[Mapping[int, Fraction]], other: Sequence[Mapping[int, Fraction]],
         form: QMatrix) -> QMatrix:
    """Matrix of (u_i, v_j) for sparse u, v under the bilinear form matrix."""
    rows = []
    for u in vectors:
        # u^T B as a sparse row
        uB: Vec = {}
        for i, a in u.items():
            r = form.row(i)
            for j, b in enumerate(r):
                if b:
                    uB[j] = uB.get(j, ZERO) + a * b
        rows.append([sum((uB.get(j, ZERO) * x for j, x in v.items()), ZERO) for v in other])
    return QMatrix(rows, cols=len(other))


def sparse_kernel(vectors: Sequence[Mapping[int, Fraction]], n_coords: int | None = None
                  ) -> List[Tuple[Fraction, ...]]:
    """Kernel of the linear map c -> sum_i c_i vectors[i] (dependency relations)."""
    coords = sorted({k for v in vectors for k in v}) if n_coords is None else range(n_coords)
    if not vectors:
        return []
    if not coords:
        return [tuple(ONE if i == j else ZERO for j in range(len(vectors))) for i in range(len(vectors))]
    M = QMatrix([[v.get(k, ZERO) for v in vectors] for k in coords], cols=len(vectors))
    return kernel(M)


def combine(coeffs: Sequence[Fraction], vectors: Sequence[Mapping[int, Fraction]]) -> Vec:
    acc: Vec = {}
    for c, v in zip(coeffs, vectors):
        vaxpy(acc, v, c)
    return acc


def intersect(U: Sequence[Mapping[int, Fraction]], W: Sequence[Mapping[int, Fraction]]) -> List[Vec]:
    """Basis of span(U) ∩ span(W); U and W must each be independent."""
    if not U or not W:
        return []
    rel = sparse_kernel(list(U) + [vscale(w, -1) for w in W])
    out = Echelon()
    for r in rel:
        out.add(combine(r[: len(U)], U))
    return out.basis


class Coordinates:
    """Express sparse vectors in a fixed independent family of sparse vectors."""

    def __init__(self, basis: Sequence[Mapping[int, Fraction]]):
        self.size = len(basis)
        # pivot -> (reduced row, coefficient vector over the basis)
        self._rows: Dict[int, Tuple[Vec, Vec]] = {}
        for i, b in enumerate(basis):
            v, c = self._reduce(b, {i: ONE})
            if not v:
                raise ValueError(f"basis vector {i} is dependent on the previous ones")
            p = min(v)
            s = 1 / v[p]
            self._rows[p] = (vscale(v, s), vscale(c, s))

    def _reduce(self, v, coeff):
        v = dict(v)
        coeff = dict(coeff)
        while True:
            hits = [k for k in v if k in self._rows]
            if not hits:
                return v, coeff
            k = min(hits)
            f = v[k]
            row, rc = self._rows[k]
            vaxpy(v, row, -f)
            vaxpy(coeff, rc, -f)

    def __call__(self, v: Mapping[int, Fraction]) -> Vec:
        rest, coeff = self._reduce(v, {})
        if rest:
            raise ValueError("vector is not in the span of the basis")
        return vscale(coeff, -1)
