"""Right modules, minimal projective covers, syzygies and Omega-periods.

A module stores one coordinate space per vertex and one matrix per arrow of
the algebra.  Vectors are rows: the arrow a: s -> t acts by ``v -> v @ M[a]``
with ``M[a]`` of shape dim(M_s) x dim(M_t).  Periodicity is detected with
syzygies only; for symmetric algebras Omega is a stable self-equivalence, so
cosyzygies add nothing.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Sequence

from .algebra import FDAlgebra
from .linalg import (
    complement_indices,
    coordinates,
    identity,
    is_invertible,
    left_kernel,
    matmul,
    rank,
    sparse_nullspace,
    zeros,
)

ISO_SAMPLES = 20
DEFAULT_MAX_K = 8


class ModuleError(ValueError):
    pass


@dataclass
class RightModule:
    algebra: FDAlgebra
    dims: list[int]
    action: dict[int, list[list]]  # generator position -> matrix

    @property
    def dimension(self) -> int:
        return sum(self.dims)

    @property
    def is_zero(self) -> bool:
        return self.dimension == 0

    def matrix(self, g: int) -> list[list]:
        return self.action[g]

    def act_word(self, v: int, word: Sequence[int], rows: list[list]) -> list[list]:
        """Apply the generators of ``word`` (positions in algebra.generators) to row vectors at vertex v."""
        F = self.algebra.field
        gens = self.algebra.generators
        cur = rows
        for g in word:
            t = gens[g].target
            cur = matmul(cur, self.action[g], F, ncols=self.dims[t])
        return cur

    def check_relations(self) -> bool:
        """Every defining relation of the presentation acts as zero."""
        A = self.algebra
        if A.rs is None or A.rs.presentation is None:
            return True
        pos = {g.index: p for p, g in enumerate(A.generators)}
        q = A.quiver
        arrow_pos = {a: pos[A.index_of_word(q.source[a], (a,))] for a in range(q.n_arrows)}
        F = A.field
        for r in A.rs.presentation.relations:
            if not r.terms:
                continue
            s, t = r.source, r.target
            total = zeros(self.dims[s], self.dims[t], F)
            for w, c in r.terms.items():
                part = self.act_word(s, [arrow_pos[a] for a in w], identity(self.dims[s], F))
                total = [[F.add(x, F.mul(c, y)) for x, y in zip(rt, rp)] for rt, rp in zip(total, part)]
            if any(x != 0 for row in total for x in row):
                return False
        return True


def _basis_words(A: FDAlgebra) -> list[tuple[int, ...] | None]:
    """Each basis element as a word in generator positions (None when not a plain path)."""
    q = A.quiver
    if q is None:
        raise ModuleError("projective modules need an algebra with path basis")
    pos = {}
    for p, g in enumerate(A.generators):
        pos[A.basis[g.index].word] = p
    out = []
    for b in A.basis:
        out.append(tuple(pos[(a,)] for a in b.word))
    return out


def simple(A: FDAlgebra, i) -> RightModule:
    i = A.vertex(i)
    dims = [1 if v == i else 0 for v in range(len(A.vertices))]
    F = A.field
    act = {p: zeros(dims[g.source], dims[g.target], F) for p, g in enumerate(A.generators)}
    return RightModule(A, dims, act)


def projective(A: FDAlgebra, i) -> RightModule:
    """e_i A with basis the irreducible paths starting at i."""
    i = A.vertex(i)
    F = A.field
    nv = len(A.vertices)
    slices = [A.slice(i, v) for v in range(nv)]
    local = {k: pos for v in range(nv) for pos, k in enumerate(slices[v])}
    act = {}
    for p, g in enumerate(A.generators):
        M = zeros(len(slices[g.source]), len(slices[g.target]), F)
        for r, k in enumerate(slices[g.source]):
            for kk, c in A.mult.get((k, g.index), {}).items():
                M[r][local[kk]] = c
        act[p] = M
    return RightModule(A, [len(s) for s in slices], act)


@dataclass
class ResolutionStep:
    cover: list[int]  # vertex of each top generator
    maps: list[list[list]]  # per vertex: rows = cover basis, cols = module basis
    kernel: RightModule
    module: RightModule
    kernel_rows: list = field(default_factory=list, repr=False)  # per vertex, in cover coordinates

    @property
    def minimal(self) -> bool:
        """Kernel has no component on the idempotent of any summand (it lies in the radical)."""
        offs = _summand_offsets(self.kernel.algebra, self.cover)
        for k, v in enumerate(self.cover):
            pos = offs[v][k]
            if any(row[pos] != 0 for row in self.kernel_rows[v]):
                return False
        return True


def _summand_offsets(A: FDAlgebra, cover: list[int]) -> dict[int, dict[int, int]]:
    """Position of e_{v_k} inside the vertex-v_k space of the cover, per summand k."""
    out: dict = {}
    nv = len(A.vertices)
    acc = [0] * nv
    for k, v in enumerate(cover):
        for t in range(nv):
            if t == v:
                e = A.idempotents[v]
                out.setdefault(v, {})[k] = acc[t] + A.slice(v, t).index(e)
            acc[t] += A.dims[v][t]
    return out


def projective_cover(M: RightModule) -> ResolutionStep:
    A, F = M.algebra, M.algebra.field
    nv = len(A.vertices)
    words = _basis_words(A)
    # radical MJ at each vertex, then top generators as a complement
    gens_into: dict = {}
    for p, g in enumerate(A.generators):
        gens_into.setdefault(g.target, []).append(p)
    tops: list[tuple[int, list]] = []
    for v in range(nv):
        if not M.dims[v]:
            continue
        rad_rows = [row for p in gens_into.get(v, []) for row in M.action[p]]
        for c in complement_indices(rad_rows, F, M.dims[v]):
            vec = [F.zero] * M.dims[v]
            vec[c] = F.one
            tops.append((v, vec))
    cover = [v for v, _ in tops]
    # map: summand k basis element b in e_{v_k} A e_t  ->  m_k * b in M_t
    maps = [[] for _ in range(nv)]
    for v, vec in tops:
        for t in range(nv):
            for k in A.slice(v, t):
                maps[t].append(M.act_word(v, words[k], [vec])[0])
    for t in range(nv):
        if M.dims[t] and rank(maps[t], F) != M.dims[t]:
            raise ArithmeticError("projective cover map is not surjective")
    # cover action and kernel
    cdims = [sum(A.dims[v][t] for v in cover) for t in range(nv)]
    kernel_rows = [left_kernel(maps[t], F, cdims[t], M.dims[t]) if cdims[t] else [] for t in range(nv)]
    Pof = {v: projective(A, v) for v in set(cover)}
    act = {}
    for p, g in enumerate(A.generators):
        s, t = g.source, g.target
        big = zeros(cdims[s], cdims[t], F)
        r0 = c0 = 0
        for v in cover:
            blk = Pof[v].action[p]
            for i, row in enumerate(blk):
                for j, x in enumerate(row):
                    if x != 0:
                        big[r0 + i][c0 + j] = x
            r0 += A.dims[v][s]
            c0 += A.dims[v][t]
        K_s, K_t = kernel_rows[s], kernel_rows[t]
        if not K_s:
            act[p] = zeros(0, len(K_t), F)
            continue
        images = matmul(K_s, big, F, ncols=cdims[t])
        act[p] = coordinates(K_t, images, F) if K_t else zeros(len(K_s), 0, F)
    K = RightModule(A, [len(k) for k in kernel_rows], act)
    return ResolutionStep(cover, maps, K, M, kernel_rows)


def syzygy(M: RightModule, k: int = 1) -> RightModule:
    if k < 1:
        raise ValueError("k must be at least 1")
    for _ in range(k):
        M = projective_cover(M).kernel
    return M


# ---------- homomorphisms and isomorphism ----------

def is_homomorphism(M: RightModule, N: RightModule, h: list[list[list]]) -> bool:
    """Check M_a h_t == h_s N_a for every generator a: s -> t."""
    A, F = M.algebra, M.algebra.field
    for p, g in enumerate(A.generators):
        s, t = g.source, g.target
        left = matmul(M.action[p], h[t], F, inner=M.dims[t], ncols=N.dims[t])
        right = matmul(h[s], N.action[p], F, inner=N.dims[s], ncols=N.dims[t])
        if left != right:
            return False
    return True


def hom_space(M: RightModule, N: RightModule) -> list[list[list[list]]]:
    """Basis of Hom_A(M, N); each element is a list of per-vertex matrices F_v (dim M_v x dim N_v)."""
    A, F = M.algebra, M.algebra.field
    nv = len(A.vertices)
    offs, n = [], 0
    for v in range(nv):
        offs.append(n)
        n += M.dims[v] * N.dims[v]

    def var(v, i, j):
        return offs[v] + i * N.dims[v] + j

    rows = []
    for p, g in enumerate(A.generators):
        s, t = g.source, g.target
        Ma, Na = M.action[p], N.action[p]
        # (M_a F_t)[i][j] - (F_s N_a)[i][j] = 0
        for i in range(M.dims[s]):
            for j in range(N.dims[t]):
                row: dict = {}
                for k in range(M.dims[t]):
                    c = Ma[i][k]
                    if c != 0:
                        key = var(t, k, j)
                        row[key] = F.add(row.get(key, F.zero), c)
                for k in range(N.dims[s]):
                    c = Na[k][j]
                    if c != 0:
                        key = var(s, i, k)
                        row[key] = F.sub(row.get(key, F.zero), c)
                row = {a: b for a, b in row.items() if b != 0}
                if row:
                    rows.append(row)
    out = []
    for vec in sparse_nullspace(rows, n, F):
        mats = []
        for v in range(nv):
            mats.append([[vec[var(v, i, j)] for j in range(N.dims[v])] for i in range(M.dims[v])])
        out.append(mats)
    return out


@dataclass
class IsoVerdict:
    status: str  # "yes", "no", "inconclusive"
    witness: list | None = None
    reason: str = ""
    seed: int | None = None

    def __bool__(self):
        return self.status == "yes"


def _combine(F, coeffs, basis):
    out = None
    for c, mats in zip(coeffs, basis):
        if c == 0:
            continue
        scaled = [[[F.mul(c, x) for x in row] for row in m] for m in mats]
        if out is None:
            out = scaled
        else:
            out = [[[F.add(x, y) for x, y in zip(r1, r2)] for r1, r2 in zip(m1, m2)] for m1, m2 in zip(out, scaled)]
    return out


def _invertible(F, mats) -> bool:
    return mats is not None and all(is_invertible(m, F) for m in mats if m)


def isomorphic(M: RightModule, N: RightModule, seed: int = 0, samples: int = ISO_SAMPLES) -> IsoVerdict:
    F = M.algebra.field
    if M.dims != N.dims:
        return IsoVerdict("no", reason="dimension vectors differ")
    H = hom_space(M, N)
    E = hom_space(M, M)
    if len(H) != len(E):
        return IsoVerdict("no", reason=f"dim Hom(M,N) = {len(H)} != dim End(M) = {len(E)}")
    if M.dimension == 0:
        return IsoVerdict("yes", [], "both zero")
    for h in H:
        if _invertible(F, h):
            return IsoVerdict("yes", h, "basis element")
    k = len(H)
    if F.is_finite and F.p ** k <= 4096:
        for coeffs in itertools.product(range(F.p), repeat=k):
            h = _combine(F, coeffs, H)
            if _invertible(F, h):
                return IsoVerdict("yes", h, "exhaustive")
        return IsoVerdict("no", reason="exhaustive search of Hom found no isomorphism")
    rng = random.Random(seed)
    for _ in range(samples):
        h = _combine(F, [F.random_element(rng) for _ in H], H)
        if _invertible(F, h):
            return IsoVerdict("yes", h, "random combination", seed)
    if F.is_finite:
        return IsoVerdict("inconclusive", reason=f"{samples} random samples failed", seed=seed)
    return IsoVerdict("no", reason=f"{samples} random rational samples failed", seed=seed)


# ---------- periods ----------

@dataclass
class PeriodResult:
    vertex: str
    period: int | None
    dim_vectors: list[list[int]]
    verdicts: list[IsoVerdict]
    covers: list[list[str]]

    @property
    def witness(self):
        return self.verdicts[-1].witness if self.period else None


def period(A: FDAlgebra, i, max_k: int = DEFAULT_MAX_K, seed: int = 0) -> PeriodResult:
    """Smallest k <= max_k with Omega^k(S_i) isomorphic to S_i (period None when there is none)."""
    if max_k < 1:
        raise ValueError("max_k must be at least 1")
    S = simple(A, i)
    M = S
    dvs = [S.dims[:]]
    verdicts, covers = [], []
    for k in range(1, max_k + 1):
        step = projective_cover(M)
        covers.append([A.vertices[v] for v in step.cover])
        M = step.kernel
        dvs.append(M.dims[:])
        v = isomorphic(M, S, seed=seed)
        verdicts.append(v)
        if v.status == "yes":
            return PeriodResult(A.vertices[A.vertex(i)], k, dvs, verdicts, covers)
        if M.is_zero:
            break
    return PeriodResult(A.vertices[A.vertex(i)], None, dvs, verdicts, covers)


def resolution_dims(M: RightModule, steps: int) -> list[list[int]]:
    out = [M.dims[:]]
    for _ in range(steps):
        M = syzygy(M)
        out.append(M.dims[:])
    return out
