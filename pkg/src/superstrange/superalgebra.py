"""Quadratic Lie superalgebras given by structure constants.

A :class:`LieSuperalgebra` is a finite basis with parities, a sparse table of
structure constants (only pairs ``i <= j`` are stored, the other triangle is
recovered from super-skew-symmetry), an invariant supersymmetric form and a
designated set of basis indices spanning a Cartan subalgebra of the even part.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .errors import DegenerateForm
from .exact import (
    ONE,
    ZERO,
    QMatrix,
    Q,
    Vec,
    as_sparse,
    qstr,
    vaxpy,
    vscale,
)


def _sign(pa: int, pb: int) -> int:
    return -1 if (pa & pb) else 1


class LieSuperalgebra:
    """Immutable finite-dimensional Lie superalgebra with an invariant form."""

    def __init__(
        self,
        labels: Sequence[str],
        parity: Sequence[int],
        brackets: Mapping[Tuple[int, int], Mapping[int, Fraction]],
        form,
        cartan: Sequence[int] = (),
        name: str = "",
    ):
        n = len(labels)
        if len(parity) != n:
            raise ValueError("labels and parity lengths differ")
        if any(p not in (0, 1) for p in parity):
            raise ValueError("parity flags must be 0 or 1")
        self.name = name
        self.labels: Tuple[str, ...] = tuple(labels)
        self.parity: Tuple[int, ...] = tuple(int(p) for p in parity)
        table: Dict[Tuple[int, int], Vec] = {}
        for (i, j), v in brackets.items():
            if not (0 <= i < n and 0 <= j < n):
                raise IndexError(f"bracket index out of range: {(i, j)}")
            v = as_sparse(v)
            if not v:
                continue
            if i <= j:
                table[(i, j)] = v
            else:
                # store the canonical triangle
                canon = vscale(v, -_sign(self.parity[i], self.parity[j]))
                if (j, i) in table and table[(j, i)] != canon:
                    raise ValueError(f"inconsistent brackets for {(i, j)} and {(j, i)}")
                table[(j, i)] = canon
        self._brackets = table
        self.form: QMatrix = form if isinstance(form, QMatrix) else QMatrix(form, cols=n)
        if self.form.shape != (n, n):
            raise ValueError("form has wrong shape")
        self.cartan: Tuple[int, ...] = tuple(cartan)
        self._ad: Optional[List[Dict[int, Vec]]] = None
        self._form_rows: Optional[List[Vec]] = None
        # memo for derived data (dual basis, Casimir, root data); values are immutable
        self._cache: Dict[str, object] = {}

    # -- basic data --------------------------------------------------------

    @property
    def dim(self) -> int:
        return len(self.labels)

    @property
    def even(self) -> Tuple[int, ...]:
        return tuple(i for i, p in enumerate(self.parity) if p == 0)

    @property
    def odd(self) -> Tuple[int, ...]:
        return tuple(i for i, p in enumerate(self.parity) if p == 1)

    @property
    def sdim(self) -> int:
        return len(self.even) - len(self.odd)

    @property
    def rank(self) -> int:
        return len(self.cartan)

    @property
    def structure_constants(self) -> Dict[Tuple[int, int], Vec]:
        """Stored triangle ``{(i, j): [x_i, x_j]}`` with ``i <= j``."""
        return {k: dict(v) for k, v in self._brackets.items()}

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def __repr__(self) -> str:
        return f"LieSuperalgebra({self.name or '?'}, dim={self.dim}, sdim={self.sdim})"

    def element(self, coeffs: Mapping[str, object]) -> Vec:
        """Sparse vector from ``{label: coefficient}``."""
        return {self.index(k): Q(v) for k, v in coeffs.items() if Q(v)}

    def describe(self, v: Mapping[int, Fraction]) -> str:
        if not v:
            return "0"
        parts = []
        for k in sorted(v):
            c = v[k]
            parts.append(self.labels[k] if c == 1 else f"{qstr(c)}*{self.labels[k]}")
        return " + ".join(parts)

    def vector_parity(self, v: Mapping[int, Fraction]) -> Optional[int]:
        """Parity of a homogeneous vector, None for zero or inhomogeneous."""
        ps = {self.parity[k] for k in v}
        return ps.pop() if len(ps) == 1 else None

    # -- bracket and form --------------------------------------------------

    def bracket_basis(self, i: int, j: int) -> Vec:
        if i <= j:
            return dict(self._brackets.get((i, j), {}))
        v = self._brackets.get((j, i))
        if not v:
            return {}
        return vscale(v, -_sign(self.parity[i], self.parity[j]))

    @property
    def ad_table(self) -> List[Dict[int, Vec]]:
        """``ad_table[i][j] = [x_i, x_j]`` for nonzero brackets only."""
        if self._ad is None:
            table: List[Dict[int, Vec]] = [dict() for _ in range(self.dim)]
            for (i, j), v in self._brackets.items():
                table[i][j] = v
                if i != j:
                    table[j][i] = vscale(v, -_sign(self.parity[i], self.parity[j]))
            self._ad = table
        return self._ad

    def bracket(self, a, b) -> Vec:
        a = as_sparse(a)
        b = as_sparse(b)
        table = self.ad_table
        out: Vec = {}
        for i, x in a.items():
            row = table[i]
            for j, y in b.items():
                v = row.get(j)
                if v:
                    vaxpy(out, v, x * y)
        return out

    def ad(self, a) -> QMatrix:
        """Matrix of ad(a) in the basis (columns are images of basis vectors)."""
        n = self.dim
        cols = [self.bracket(a, {j: ONE}) for j in range(n)]
        return QMatrix([[cols[j].get(i, ZERO) for j in range(n)] for i in range(n)], cols=n)

    @property
    def form_rows(self) -> List[Vec]:
        if self._form_rows is None:
            self._form_rows = [as_sparse(self.form.row(i)) for i in range(self.dim)]
        return self._form_rows

    def pair(self, a, b) -> Fraction:
        """The invariant form (a, b)."""
        a = as_sparse(a)
        b = as_sparse(b)
        rows = self.form_rows
        total = ZERO
        for i, x in a.items():
            r = rows[i]
            for j, y in b.items():
                c = r.get(j)
                if c:
                    total += x * y * c
        return total

    # -- derived algebras --------------------------------------------------

    def with_form(self, form, name: Optional[str] = None) -> "LieSuperalgebra":
        return LieSuperalgebra(
            self.labels, self.parity, self._brackets, form, self.cartan,
            self.name if name is None else name,
        )

    def scaled(self, c) -> "LieSuperalgebra":
        """Same bracket, form multiplied by the nonzero scalar c."""
        c = Q(c)
        if not c:
            raise ValueError("scale factor must be nonzero")
        return self.with_form(self.form.scale(c), name=f"{qstr(c)}*{self.name}")

    def perturbed(self, i: int, j: int, k: int, delta) -> "LieSuperalgebra":
        """Copy with the structure constant c_{ij}^k shifted by delta."""
        table = self.structure_constants
        key = (i, j) if i <= j else (j, i)
        d = Q(delta) if i <= j else -_sign(self.parity[i], self.parity[j]) * Q(delta)
        v = table.get(key, {})
        vaxpy(v, {k: ONE}, d)
        table[key] = v
        return LieSuperalgebra(self.labels, self.parity, table, self.form, self.cartan,
                               f"perturbed {self.name}")

    # -- serialization -----------------------------------------------------

    def to_dict(self) -> dict:
        consts = []
        for (i, j) in sorted(self._brackets):
            for k, c in sorted(self._brackets[(i, j)].items()):
                consts.append([i, j, k, qstr(c)])
        return {
            "name": self.name,
            "labels": list(self.labels),
            "parity": list(self.parity),
            "cartan": list(self.cartan),
            "brackets": consts,
            "form": [[qstr(x) for x in self.form.row(i)] for i in range(self.dim)],
        }

    @classmethod
    def from_dict(cls, d: Mapping) -> "LieSuperalgebra":
        table: Dict[Tuple[int, int], Vec] = {}
        for i, j, k, c in d["brackets"]:
            table.setdefault((int(i), int(j)), {})[int(k)] = Q(c)
        n = len(d["labels"])
        form = QMatrix([[Q(x) for x in row] for row in d["form"]], cols=n)
        return cls(d["labels"], d["parity"], table, form, d.get("cartan", ()), d.get("name", ""))

    def to_text(self) -> str:
        """Canonical JSON text (sorted keys, exact "p/q" rationals)."""
        return json.dumps(self.to_dict(), sort_keys=True, indent=1)

    @classmethod
    def from_text(cls, text: str) -> "LieSuperalgebra":
        return cls.from_dict(json.loads(text))

    def same_as(self, other: "LieSuperalgebra") -> bool:
        return self.to_dict() == other.to_dict()


# ---------------------------------------------------------------------------
# validation


@dataclass
class AxiomCheck:
    name: str
    passed: bool
    witness: Optional[tuple] = None
    detail: str = ""


@dataclass
class ValidationReport:
    algebra: str
    checks: List[AxiomCheck] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def __getitem__(self, name: str) -> AxiomCheck:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def failures(self) -> List[AxiomCheck]:
        return [c for c in self.checks if not c.passed]

    def to_dict(self) -> dict:
        return {
            "algebra": self.algebra,
            "ok": self.ok,
            "checks": [
                {"name": c.name, "passed": c.passed,
                 "witness": list(c.witness) if c.witness else None, "detail": c.detail}
                for c in self.checks
            ],
        }


def _check_skew(L: LieSuperalgebra) -> AxiomCheck:
    # off-diagonal skew-symmetry holds by storage; only [x_i, x_i] can break it
    for i in L.even:
        if L.bracket_basis(i, i):
            return AxiomCheck("super_skew_symmetry", False, (i, i), "[x,x] != 0 for even x")
    return AxiomCheck("super_skew_symmetry", True)


def _check_parity(L: LieSuperalgebra) -> AxiomCheck:
    for (i, j), v in L._brackets.items():
        for k in v:
            if L.parity[k] != (L.parity[i] + L.parity[j]) % 2:
                return AxiomCheck("parity_homogeneity", False, (i, j, k))
    return AxiomCheck("parity_homogeneity", True)


def _check_jacobi(L: LieSuperalgebra) -> AxiomCheck:
    # [a,[b,c]] = [[a,b],c] + (-1)^{|a||b|} [b,[a,c]]
    table = L.ad_table
    n = L.dim
    for a in range(n):
        ta = table[a]
        for b in range(n):
            tb = table[b]
            ab = ta.get(b, {})
            s = _sign(L.parity[a], L.parity[b])
            for c in range(n):
                lhs = L.bracket({a: ONE}, tb.get(c, {})) if c in tb else {}
                rhs = L.bracket(ab, {c: ONE}) if ab else {}
                if c in ta:
                    vaxpy(rhs, L.bracket({b: ONE}, ta[c]), s)
                if lhs != rhs:
                    return AxiomCheck("super_jacobi", False, (a, b, c))
    return AxiomCheck("super_jacobi", True)


def _check_form_super(L: LieSuperalgebra) -> AxiomCheck:
    B = L.form
    for i in range(L.dim):
        for j in range(L.dim):
            pi, pj = L.parity[i], L.parity[j]
            if pi != pj:
                if B[i, j]:
                    return AxiomCheck("form_supersymmetric", False, (i, j), "even-odd pairing")
            elif pi == 0 and B[i, j] != B[j, i]:
                return AxiomCheck("form_supersymmetric", False, (i, j), "not symmetric on g_0")
            elif pi == 1 and B[i, j] != -B[j, i]:
                return AxiomCheck("form_supersymmetric", False, (i, j), "not skew on g_1")
    return AxiomCheck("form_supersymmetric", True)


def _check_invariance(L: LieSuperalgebra) -> AxiomCheck:
    # ([a,b],c) = (a,[b,c])
    table = L.ad_table
    rows = L.form_rows
    n = L.dim
    for a in range(n):
        for b in range(n):
            ab = table[a].get(b, {})
            # left side as a sparse row over c
            left: Vec = {}
            for k, x in ab.items():
                vaxpy(left, rows[k], x)
            tb = table[b]
            ra = rows[a]
            for c in range(n):
                bc = tb.get(c)
                right = sum((ra.get(k, ZERO) * x for k, x in bc.items()), ZERO) if bc else ZERO
                if left.get(c, ZERO) != right:
                    return AxiomCheck("form_invariant", False, (a, b, c))
    return AxiomCheck("form_invariant", True)


def _check_nondegenerate(L: LieSuperalgebra) -> AxiomCheck:
    r = L.form.rank() if L.dim else 0
    return AxiomCheck("form_nondegenerate", r == L.dim, None, f"rank {r} of {L.dim}")


def _check_cartan(L: LieSuperalgebra) -> AxiomCheck:
    for h in L.cartan:
        if L.parity[h]:
            return AxiomCheck("cartan_diagonal", False, (h,), "odd Cartan element")
        for h2 in L.cartan:
            if L.bracket_basis(h, h2):
                return AxiomCheck("cartan_diagonal", False, (h, h2), "Cartan not abelian")
        for k in range(L.dim):
            v = L.bracket_basis(h, k)
            if v and set(v) != {k}:
                return AxiomCheck("cartan_diagonal", False, (h, k), "not diagonal on basis")
    return AxiomCheck("cartan_diagonal", True)


def validate(L: LieSuperalgebra) -> ValidationReport:
    """Check every axiom of a quadratic Lie superalgebra; failures are data."""
    rep = ValidationReport(L.name)
    for check in (_check_skew, _check_parity, _check_jacobi, _check_form_super,
                  _check_invariance, _check_nondegenerate, _check_cartan):
        rep.checks.append(check(L))
    return rep


# ---------------------------------------------------------------------------
# dual basis and Killing form


@dataclass(frozen=True)
class DualBasis:
    """``vectors[i]`` is x^i, with (x_j, x^i) = delta_ij.

    The basis vector sits on the left.  For odd indices this differs in sign
    from the right-hand convention, and it is the one for which
    sum_i x^i x_i acts on an indecomposable algebra by a scalar plus a
    nilpotent.
    """

    vectors: Tuple[Vec, ...]

    def __getitem__(self, i: int) -> Vec:
        return self.vectors[i]

    def __len__(self) -> int:
        return len(self.vectors)


def dual_basis(L: LieSuperalgebra) -> DualBasis:
    """Dual basis w.r.t. the form: x^i = sum_k (B^{-1})_{ki} x_k."""
    hit = L._cache.get("dual")
    if hit is not None:
        return hit
    if L.dim == 0:
        return DualBasis(())
    try:
        inv = L.form.inverse()
    except ZeroDivisionError:
        raise DegenerateForm(f"form of {L.name} is degenerate") from None
    # (x_j, x^i) = sum_k B_jk D_ik = delta_ij  =>  D^T = B^{-1}
    db = DualBasis(tuple(as_sparse(inv.col(i)) for i in range(L.dim)))
    L._cache["dual"] = db
    return db


def killing_form(L: LieSuperalgebra) -> QMatrix:
    """kappa(x_i, x_j) = str(ad x_i ad x_j)."""
    n = L.dim
    table = L.ad_table
    K = [[ZERO] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            tot = ZERO
            for k in range(n):
                inner = table[j].get(k)
                if not inner:
                    continue
                # coefficient of x_k in [x_i, [x_j, x_k]]
                c = ZERO
                for m, y in inner.items():
                    w = table[i].get(m)
                    if w:
                        c += y * w.get(k, ZERO)
                if c:
                    tot += -c if L.parity[k] else c
            K[i][j] = tot
            K[j][i] = tot
    return QMatrix(K, cols=n)


# ---------------------------------------------------------------------------
# subalgebras


def subalgebra(L: LieSuperalgebra, indices: Sequence[int], name: str = "") -> LieSuperalgebra:
    """Restriction to a bracket-closed set of basis indices."""
    idx = list(indices)
    pos = {k: a for a, k in enumerate(idx)}
    table: Dict[Tuple[int, int], Vec] = {}
    for a, i in enumerate(idx):
        for b in range(a, len(idx)):
            v = L.bracket_basis(i, idx[b])
            if not v:
                continue
            if any(k not in pos for k in v):
                raise ValueError(f"indices are not closed under the bracket: [{i},{idx[b]}]")
            table[(a, b)] = {pos[k]: c for k, c in v.items()}
    form = L.form.submatrix(idx, idx) if idx else QMatrix.zeros(0)
    cartan = [pos[h] for h in L.cartan if h in pos]
    return LieSuperalgebra([L.labels[i] for i in idx], [L.parity[i] for i in idx],
                           table, form, cartan, name or L.name)


def fixed_point_subalgebra(L: LieSuperalgebra, G) -> LieSuperalgebra:
    """g^0, the phase-zero part of a grading, with restricted bracket and form."""
    idx = [i for i in range(L.dim) if G.phase[i] == 0]
    return subalgebra(L, idx, name=f"{L.name}^0[{G.describe()}]")


def direct_sum(*parts: LieSuperalgebra, name: str = "") -> LieSuperalgebra:
    """Orthogonal direct sum; labels are prefixed by the summand number when needed."""
    labels: List[str] = []
    parity: List[int] = []
    table: Dict[Tuple[int, int], Vec] = {}
    cartan: List[int] = []
    n = sum(p.dim for p in parts)
    form = [[ZERO] * n for _ in range(n)]
    off = 0
    clash = len({l for p in parts for l in p.labels}) < sum(p.dim for p in parts)
    for s, p in enumerate(parts):
        labels += [f"{s + 1}:{l}" if clash else l for l in p.labels]
        parity += list(p.parity)
        for (i, j), v in p._brackets.items():
            table[(i + off, j + off)] = {k + off: c for k, c in v.items()}
        for i in range(p.dim):
            for j in range(p.dim):
                form[i + off][j + off] = p.form[i, j]
        cartan += [h + off for h in p.cartan]
        off += p.dim
    return LieSuperalgebra(labels, parity, table, QMatrix(form, cols=n), cartan,
                           name or " + ".join(p.name for p in parts))
