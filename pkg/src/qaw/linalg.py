"""Exact linear algebra over a :class:`~qaw.coefficients.Field`.

Dense matrices are lists of row lists.  Vectors are rows and matrices act on
the right (``v -> v A``), matching right modules.  :class:`SparseEchelon`
handles the large, very sparse systems of the path-space oracle and of
minimal-relation counting.
"""

from __future__ import annotations

from typing import Callable, Hashable, Iterable

from .coefficients import Field


def zeros(n: int, m: int, F: Field) -> list[list]:
    return [[F.zero] * m for _ in range(n)]


def identity(n: int, F: Field) -> list[list]:
    out = zeros(n, n, F)
    for i in range(n):
        out[i][i] = F.one
    return out


def transpose(A: list[list], ncols: int | None = None) -> list[list]:
    if not A:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*A)]


def matmul(A: list[list], B: list[list], F: Field, inner: int | None = None, ncols: int | None = None) -> list[list]:
    """A (n x k) times B (k x m). Shapes may be degenerate; pass ``ncols`` when B has no rows."""
    if ncols is None:
        ncols = len(B[0]) if B else 0
    add, mul = F.add, F.mul
    out = []
    for row in A:
        acc = [F.zero] * ncols
        for k, a in enumerate(row):
            if a == 0:
                continue
            for j, b in enumerate(B[k]):
                if b != 0:
                    acc[j] = add(acc[j], mul(a, b))
        out.append(acc)
    return out


def vecmat(v: list, A: list[list], F: Field, ncols: int) -> list:
    return matmul([v], A, F, ncols=ncols)[0]


def rref(rows: Iterable[list], F: Field) -> tuple[list[list], list[int]]:
    """Reduced row echelon form; returns the nonzero rows and their pivot columns."""
    M = [list(r) for r in rows]
    if not M:
        return [], []
    ncols = len(M[0])
    pivots: list[int] = []
    r = 0
    sub, mul = F.sub, F.mul
    for c in range(ncols):
        piv = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = F.inv(M[r][c])
        M[r] = [mul(x, inv) for x in M[r]]
        prow = M[r]
        for i in range(len(M)):
            if i != r:
                f = M[i][c]
                if f != 0:
                    M[i] = [sub(x, mul(f, y)) if y != 0 else x for x, y in zip(M[i], prow)]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M[:r], pivots


def rank(rows: Iterable[list], F: Field) -> int:
    return len(rref(rows, F)[0])


def nullspace(A: list[list], F: Field, ncols: int | None = None) -> list[list]:
    """Basis of {x : A x = 0} as a list of row vectors."""
    if ncols is None:
        ncols = len(A[0]) if A else 0
    R, pivots = rref(A, F) if A else ([], [])
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for fc in free:
        x = [F.zero] * ncols
        x[fc] = F.one
        for row, pc in zip(R, pivots):
            if row[fc] != 0:
                x[pc] = F.neg(row[fc])
        basis.append(x)
    return basis


def left_kernel(A: list[list], F: Field, nrows: int, ncols: int) -> list[list]:
    """Basis of {v : v A = 0} for an ``nrows x ncols`` matrix A."""
    if nrows == 0:
        return []
    if ncols == 0:
        return identity(nrows, F)
    return nullspace(transpose(A), F, ncols=nrows)


class NotInSpan(ValueError):
    pass


def coordinates(basis: list[list], vectors: list[list], F: Field) -> list[list]:
    """Express each vector as a combination of the (independent) basis rows."""
    k = len(basis)
    if not vectors:
        return []
    n = len(vectors[0])
    if k == 0:
        for v in vectors:
            if any(x != 0 for x in v):
                raise NotInSpan("vector not in the zero subspace")
        return [[] for _ in vectors]
    # Solve c B = v via rref of B^T augmented with v^T columns.
    BT = transpose(basis)
    aug = [BT[i] + [v[i] for v in vectors] for i in range(n)]
    R, pivots = rref(aug, F)
    if any(p >= k for p in pivots):
        raise NotInSpan("vector not in span of basis")
    if len(pivots) < k:
        raise ValueError("basis rows are not independent")
    out = [[F.zero] * k for _ in vectors]
    for row, pc in zip(R, pivots):
        for j in range(len(vectors)):
            out[j][pc] = row[k + j]
    return out


def complement_indices(rows: list[list], F: Field, n: int) -> list[int]:
    """Standard basis indices that extend span(rows) to the whole n-space."""
    _, pivots = rref(rows, F) if rows else ([], [])
    pset = set(pivots)
    return [c for c in range(n) if c not in pset]


def is_invertible(A: list[list], F: Field) -> bool:
    n = len(A)
    if any(len(r) != n for r in A):
        return False
    return rank(A, F) == n


class SparseEchelon:
    """Incremental sparse row echelon form over F.

    Rows are dicts ``key -> coefficient``.  ``order`` maps a key to a sortable
    value; each stored row is monic at its largest key, which is its pivot.
    """

    def __init__(self, F: Field, order: Callable[[Hashable], object]):
        self.F = F
        self.order = order
        self.pivots: dict[Hashable, dict] = {}

    def __len__(self):
        return len(self.pivots)

    def reduce(self, row: dict) -> dict:
        F, order, pivots = self.F, self.order, self.pivots
        row = {k: v for k, v in row.items() if v != 0}
        done: dict = {}
        while row:
            lead = max(row, key=order)
            c = row[lead]
            prow = pivots.get(lead)
            if prow is None:
                done[lead] = row.pop(lead)
                continue
            for k, v in prow.items():
                nv = F.sub(row.get(k, F.zero), F.mul(c, v))
                if nv != 0:
                    row[k] = nv
                else:
                    row.pop(k, None)
        return done

    def add(self, row: dict) -> bool:
        """Insert a row; return True when it was independent of the stored rows."""
        F, order, pivots = self.F, self.order, self.pivots
        row = {k: v for k, v in row.items() if v != 0}
        while row:
            lead = max(row, key=order)
            c = row[lead]
            prow = pivots.get(lead)
            if prow is None:
                inv = F.inv(c)
                pivots[lead] = {k: F.mul(v, inv) for k, v in row.items()}
                return True
            for k, v in prow.items():
                nv = F.sub(row.get(k, F.zero), F.mul(c, v))
                if nv != 0:
                    row[k] = nv
                else:
                    row.pop(k, None)
        return False

    def contains(self, row: dict) -> bool:
        return not self.reduce(row)


def sparse_nullspace(rows: Iterable[dict], nvars: int, F: Field) -> list[list]:
    """Basis of the common kernel of sparse linear forms over variables 0..nvars-1."""
    ech = SparseEchelon(F, lambda k: k)
    for r in rows:
        ech.add(r)
    piv = ech.pivots
    # back-substitute so no pivot row mentions another pivot variable
    for p in sorted(piv):
        row = piv[p]
        for k in [k for k in row if k != p and k in piv]:
            c = row.pop(k, None)
            if c is None:
                continue
            for kk, v in piv[k].items():
                if kk == k:
                    continue
                nv = F.sub(row.get(kk, F.zero), F.mul(c, v))
                if nv != 0:
                    row[kk] = nv
                else:
                    row.pop(kk, None)
    free = [v for v in range(nvars) if v not in piv]
    index = {v: i for i, v in enumerate(free)}
    basis = [[F.zero] * nvars for _ in free]
    for i, v in enumerate(free):
        basis[i][v] = F.one
    for p, row in piv.items():
        for k, c in row.items():
            if k != p:
                basis[index[k]][p] = F.neg(c)
    return basis
