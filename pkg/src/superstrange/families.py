"""Matrix realizations of gl(m|n), sl(m|n), osp(m|2n) and the odd symplectic space.

All constructors return weight bases: every basis vector is an eigenvector of
every Cartan element, and the Cartan elements themselves are basis vectors.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from .errors import AlgebraSpecError, DegenerateForm
from .exact import ONE, ZERO, Coordinates, QMatrix, Q, Vec, kernel
from .superalgebra import LieSuperalgebra, direct_sum

SMat = Dict[Tuple[int, int], Fraction]


def _mul(X: SMat, Y: SMat) -> SMat:
    out: SMat = {}
    rows: Dict[int, List[Tuple[int, Fraction]]] = {}
    for (k, j), y in Y.items():
        rows.setdefault(k, []).append((j, y))
    for (i, k), x in X.items():
        for j, y in rows.get(k, ()):
            v = out.get((i, j), ZERO) + x * y
            if v:
                out[(i, j)] = v
            else:
                out.pop((i, j), None)
    return out


def _supertrace(X: SMat, rp: Sequence[int]) -> Fraction:
    return sum((-x if rp[i] else x for (i, j), x in X.items() if i == j), ZERO)


def matrix_superalgebra(
    mats: Sequence[SMat],
    row_parity: Sequence[int],
    labels: Sequence[str],
    cartan: Sequence[int],
    form_scale=ONE,
    name: str = "",
) -> LieSuperalgebra:
    """Subalgebra of gl(row_parity) spanned by homogeneous supermatrices.

    Bracket is the supercommutator, form is ``form_scale * str(XY)``.
    """
    N = len(row_parity)

    def flat(X: SMat) -> Vec:
        return {i * N + j: x for (i, j), x in X.items() if x}

    par = []
    for X in mats:
        ps = {(row_parity[i] + row_parity[j]) % 2 for (i, j) in X}
        if len(ps) != 1:
            raise ValueError("basis matrix is not homogeneous")
        par.append(ps.pop())
    coords = Coordinates([flat(X) for X in mats])
    table: Dict[Tuple[int, int], Vec] = {}
    d = len(mats)
    for a in range(d):
        for b in range(a, d):
            XY = _mul(mats[a], mats[b])
            YX = _mul(mats[b], mats[a])
            s = -1 if (par[a] & par[b]) else 1
            comm = dict(XY)
            for k, v in YX.items():
                w = comm.get(k, ZERO) - s * v
                if w:
                    comm[k] = w
                else:
                    comm.pop(k, None)
            if comm:
                table[(a, b)] = coords(flat(comm))
    c = Q(form_scale)
    form = [[c * _supertrace(_mul(mats[a], mats[b]), row_parity) for b in range(d)]
            for a in range(d)]
    return LieSuperalgebra(labels, par, table, QMatrix(form, cols=d), cartan, name)


def _unit_label(a: int, b: int) -> str:
    return f"E{a + 1}{b + 1}" if a < 9 and b < 9 else f"E{a + 1},{b + 1}"


def _require_nondegenerate(L: LieSuperalgebra) -> LieSuperalgebra:
    if L.dim and L.form.rank() < L.dim:
        raise DegenerateForm(f"invariant form of {L.name} is degenerate "
                             f"(rank {L.form.rank()} < {L.dim})")
    return L


def build_glmn(m: int, n: int) -> LieSuperalgebra:
    """gl(m|n) on matrix units E_ab, form str(XY), Cartan the diagonal units."""
    if m < 0 or n < 0 or m + n < 1:
        raise ValueError("gl(m|n) needs m, n >= 0 and m + n >= 1")
    N = m + n
    rp = [0] * m + [1] * n
    mats, labels, cartan = [], [], []
    for a in range(N):
        for b in range(N):
            if a == b:
                cartan.append(len(mats))
            mats.append({(a, b): ONE})
            labels.append(_unit_label(a, b))
    return _require_nondegenerate(
        matrix_superalgebra(mats, rp, labels, cartan, name=f"gl({m}|{n})"))


def build_slmn(m: int, n: int) -> LieSuperalgebra:
    """sl(m|n): supertrace-zero matrices, form str(XY).  Rejects m = n."""
    if m < 0 or n < 0 or m + n < 2:
        raise ValueError("sl(m|n) needs m, n >= 0 and m + n >= 2")
    N = m + n
    rp = [0] * m + [1] * n
    mats, labels, cartan = [], [], []
    for a in range(N - 1):
        s = ONE if rp[a] != rp[a + 1] else -ONE
        cartan.append(len(mats))
        mats.append({(a, a): ONE, (a + 1, a + 1): s})
        labels.append(f"H{a + 1}")
    for a in range(N):
        for b in range(N):
            if a != b:
                mats.append({(a, b): ONE})
                labels.append(_unit_label(a, b))
    L = matrix_superalgebra(mats, rp, labels, cartan, name=f"sl({m}|{n})")
    return _require_nondegenerate(L)


def build_ospm2n(m: int, n: int) -> LieSuperalgebra:
    """osp(m|2n) preserving an antidiagonal supersymmetric form; form = str(XY)/2.

    The defining space has even basis e_0..e_{m-1} with (e_i, e_{m-1-i}) = 1 and
    odd basis f_0..f_{2n-1} with (f_j, f_{2n-1-j}) = +1 for j < n, -1 otherwise.
    """
    if m < 0 or n < 0 or m + n < 1:
        raise ValueError("osp(m|2n) needs m, n >= 0 and m + n >= 1")
    N = m + 2 * n
    rp = [0] * m + [1] * (2 * n)
    b = [[ZERO] * N for _ in range(N)]
    for i in range(m):
        b[i][m - 1 - i] = ONE
    for j in range(2 * n):
        b[m + j][m + 2 * n - 1 - j] = ONE if j < n else -ONE
    # torus t = (t_0..t_{N-1}) with t_{mirror(i)} = -t_i; record it per Cartan element
    cartan_mats: List[SMat] = []
    for i in range(m // 2):
        cartan_mats.append({(i, i): ONE, (m - 1 - i, m - 1 - i): -ONE})
    for j in range(n):
        a, c = m + j, m + 2 * n - 1 - j
        cartan_mats.append({(a, a): ONE, (c, c): -ONE})
    wt = [tuple(X.get((r, r), ZERO) for X in cartan_mats) for r in range(N)]

    # group matrix units by (parity, weight)
    groups: Dict[Tuple[int, tuple], List[Tuple[int, int]]] = {}
    for r in range(N):
        for c in range(N):
            w = tuple(x - y for x, y in zip(wt[r], wt[c]))
            groups.setdefault(((rp[r] + rp[c]) % 2, w), []).append((r, c))

    mats: List[SMat] = []
    labels: List[str] = []
    cartan: List[int] = []
    zero_w = tuple(ZERO for _ in cartan_mats)
    for key in sorted(groups, key=lambda k: (k[0], [-x for x in k[1]])):
        p, w = key
        units = groups[key]
        # b(Xu, v) + (-1)^{p |u|} b(u, Xv) = 0 for basis vectors u = e_s, v = e_t
        rows = []
        for s in range(N):
            for t in range(N):
                sign = -1 if (p & rp[s]) else 1
                row = []
                for (r, c) in units:
                    coef = ZERO
                    if c == s:
                        coef += b[r][t]
                    if c == t:
                        coef += sign * b[s][r]
                    row.append(coef)
                if any(row):
                    rows.append(row)
        if rows:
            sol = kernel(QMatrix(rows, cols=len(units)))
        else:
            sol = [tuple(ONE if i == j else ZERO for j in range(len(units))) for i in range(len(units))]
        if p == 0 and w == zero_w:
            if len(sol) != len(cartan_mats):
                raise AssertionError("unexpected zero weight space in osp")
            for k, X in enumerate(cartan_mats):
                cartan.append(len(mats))
                mats.append(X)
                labels.append(f"H{k + 1}")
            continue
        for v in sol:
            X = {units[i]: x for i, x in enumerate(v) if x}
            # normalise so the first entry is 1
            first = min(X)
            X = {k: x / X[first] for k, x in X.items()}
            mats.append(X)
            lab = f"X{first[0] + 1},{first[1] + 1}"
            while lab in labels:
                lab += "'"
            labels.append(lab)
    name = f"osp({m}|{2 * n})"
    L = matrix_superalgebra(mats, rp, labels, cartan, form_scale=Fraction(1, 2), name=name)
    return _require_nondegenerate(L)


def build_odd_symplectic(n: int = 1) -> LieSuperalgebra:
    """C^{0|2n}: purely odd abelian superalgebra with the standard symplectic form."""
    if n < 1:
        raise ValueError("odd symplectic space needs n >= 1")
    d = 2 * n
    form = [[ZERO] * d for _ in range(d)]
    for i in range(n):
        form[i][i + n] = ONE
        form[i + n][i] = -ONE
    labels = [f"p{i + 1}" for i in range(n)] + [f"q{i + 1}" for i in range(n)]
    return LieSuperalgebra(labels, [1] * d, {}, QMatrix(form, cols=d), (), f"C(0|{d})")


# ---------------------------------------------------------------------------
# spec strings and catalog


_TERM = re.compile(
    r"^\s*(?:(?P<scale>-?\d+(?:/\d+)?)\s*\*\s*)?"
    r"(?P<fam>gl|sl|osp|C|so|sp)\((?P<a>\d+)(?:\|(?P<b>\d+))?\)\s*$"
)


def _build_term(fam: str, a: int, b) -> LieSuperalgebra:
    if fam == "gl":
        return build_glmn(a, 0 if b is None else b)
    if fam == "sl":
        return build_slmn(a, 0 if b is None else b)
    if fam == "osp":
        if b is None or b % 2:
            raise AlgebraSpecError("osp(m|k) needs an even k")
        return build_ospm2n(a, b // 2)
    if fam == "so":
        if b is not None:
            raise AlgebraSpecError("so(m) takes one parameter")
        return build_ospm2n(a, 0)
    if fam == "sp":
        if b is not None or a % 2:
            raise AlgebraSpecError("sp(2n) takes one even parameter")
        return build_ospm2n(0, a // 2)
    if fam == "C":
        if a != 0 or b is None or b % 2 or b == 0:
            raise AlgebraSpecError("odd symplectic space is written C(0|2n)")
        return build_odd_symplectic(b // 2)
    raise AlgebraSpecError(f"unknown family {fam}")


def parse_algebra(spec: str) -> LieSuperalgebra:
    """Build an algebra from a spec string.

    Grammar: ``term ("+" term)*`` with ``term = [c "*"] family "(" m ["|" n] ")"``,
    e.g. ``gl(2|1)``, ``osp(3|2)``, ``C(0|2)``, ``sl(2) + 2*sl(3)``.  A scalar
    prefix multiplies that summand's form.
    """
    parts = []
    for raw in spec.split("+"):
        mt = _TERM.match(raw)
        if not mt:
            raise AlgebraSpecError(f"cannot parse algebra spec {raw.strip()!r}")
        b = mt.group("b")
        L = _build_term(mt.group("fam"), int(mt.group("a")), None if b is None else int(b))
        if mt.group("scale"):
            L = L.scaled(Fraction(mt.group("scale")))
        parts.append(L)
    if len(parts) == 1:
        return parts[0]
    return direct_sum(*parts, name=" + ".join(p.name for p in parts))


def osp_dim(m: int, n: int) -> int:
    return m * (m - 1) // 2 + n * (2 * n + 1) + 2 * m * n


CATALOG_FAMILIES = [
    {"family": "gl(m|n)", "bounds": "1 <= m+n <= 5"},
    {"family": "sl(m|n) m≠n", "bounds": "2 <= m+n <= 5"},
    {"family": "osp(m|2n)", "bounds": "dim <= 40"},
    {"family": "C(0|2)", "bounds": "purely odd symplectic plane"},
]


def catalog_specs() -> List[str]:
    """Every algebra of the sweep catalog, as spec strings."""
    out = []
    for s in range(1, 6):
        for m in range(s, -1, -1):
            out.append(f"gl({m}|{s - m})")
    for s in range(2, 6):
        for m in range(s, -1, -1):
            if m != s - m:
                out.append(f"sl({m}|{s - m})")
    for n in range(0, 5):
        for m in range(0, 10):
            if m + n >= 1 and 1 <= osp_dim(m, n) <= 40:
                out.append(f"osp({m}|{2 * n})")
    out.append("C(0|2)")
    return out
