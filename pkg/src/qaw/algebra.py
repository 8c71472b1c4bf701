"""Finite-dimensional quotients as concrete algebras with structure constants.

Elements are sparse vectors ``{basis index: coefficient}``.  The basis is the
set of irreducible paths, ordered by (source, target, term order), so every
basis element lies in a single slice e_i A e_j.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Sequence

from .coefficients import Field
from .groebner import ReductionSystem, quotient_basis
from .linalg import SparseEchelon, complement_indices, rank, sparse_nullspace
from .paths import PathElement, parse_element
from .quiver import Quiver

ASSOC_FULL_LIMIT = 120
FORM_SAMPLES = 20
EXHAUSTIVE_LIMIT = 4096


@dataclass(frozen=True)
class BasisElement:
    source: int
    target: int
    word: tuple | None
    label: str

    @property
    def length(self) -> int:
        return len(self.word) if self.word is not None else -1


@dataclass(frozen=True)
class Generator:
    """An arrow of the algebra's quiver, realised as a basis element."""

    name: str
    source: int
    target: int
    index: int


class FDAlgebra:
    """A basic finite-dimensional algebra given by a basis and structure constants."""

    def __init__(self, field: Field, vertices: Sequence[str], basis: Sequence[BasisElement],
                 mult: dict, generators: Sequence[Generator], quiver: Quiver | None = None,
                 rs: ReductionSystem | None = None):
        self.field = field
        self.vertices = tuple(vertices)
        self.basis = list(basis)
        self.mult = mult
        self.generators = list(generators)
        self.quiver = quiver
        self.rs = rs
        self.corner_quiver: Quiver | None = None
        n = len(self.vertices)
        self.idempotents = [None] * n
        for k, b in enumerate(self.basis):
            if b.source == b.target and b.length == 0:
                self.idempotents[b.source] = k
        self.dims = [[0] * n for _ in range(n)]
        for b in self.basis:
            self.dims[b.source][b.target] += 1
        self._index = {(b.source, b.word): k for k, b in enumerate(self.basis) if b.word is not None}

    # -- basics
    def __len__(self):
        return len(self.basis)

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def vertex(self, v) -> int:
        if isinstance(v, int):
            return v
        return self.vertices.index(str(v))

    def slice(self, i, j) -> list[int]:
        i, j = self.vertex(i), self.vertex(j)
        return [k for k, b in enumerate(self.basis) if b.source == i and b.target == j]

    def index_of_word(self, source: int, word: tuple) -> int | None:
        return self._index.get((source, word))

    def mul(self, x: dict, y: dict) -> dict:
        F, mult = self.field, self.mult
        out: dict = {}
        for i, a in x.items():
            for j, b in y.items():
                prod = mult.get((i, j))
                if not prod:
                    continue
                ab = F.mul(a, b)
                for k, c in prod.items():
                    out[k] = F.add(out.get(k, F.zero), F.mul(ab, c))
        return {k: c for k, c in out.items() if c != 0}

    def unit(self, k: int) -> dict:
        return {k: self.field.one}

    def one(self) -> dict:
        return {k: self.field.one for k in self.idempotents}

    def element(self, text: str, params=None) -> dict:
        """Parse a relation-grammar expression and return its coordinate vector."""
        if self.rs is None:
            raise ValueError("element parsing needs an algebra built from a reduction system")
        pres = self.rs.presentation
        p = params if params is not None else (pres.params if pres else {})
        return self.from_path_element(parse_element(text, self.rs.quiver, self.field, p))

    def from_path_element(self, x: PathElement) -> dict:
        nf = self.rs.normal_form(x)
        return {self._index[(nf.source, w)]: c for w, c in nf.terms.items()}

    def to_path_element(self, x: dict) -> PathElement:
        terms, src = {}, None
        for k, c in x.items():
            b = self.basis[k]
            terms[b.word] = c
            src = b.source
        return PathElement.from_terms(self.quiver, self.field, terms, vertex=src)

    def format(self, x: dict) -> str:
        if not x:
            return "0"
        if self.quiver is not None and all(self.basis[k].word is not None for k in x):
            return str(self.to_path_element(x))
        F = self.field
        return " + ".join(f"{F.format(c)}*[{self.basis[k].label}]" for k, c in sorted(x.items()))

    # -- checks
    def check_associativity(self, sample: int | None = None, seed: int = 0) -> bool:
        n = len(self.basis)
        if sample is None:
            triples = (
                (i, j, k)
                for i in range(n) for j in range(n) if self.basis[i].target == self.basis[j].source
                for k in range(n) if self.basis[j].target == self.basis[k].source
            )
        else:
            rng = random.Random(seed)
            triples = ((rng.randrange(n), rng.randrange(n), rng.randrange(n)) for _ in range(sample))
        for i, j, k in triples:
            x, y, z = self.unit(i), self.unit(j), self.unit(k)
            if self.mul(self.mul(x, y), z) != self.mul(x, self.mul(y, z)):
                return False
        return True

    def check_idempotents(self) -> bool:
        for i, ei in enumerate(self.idempotents):
            for j, ej in enumerate(self.idempotents):
                want = self.unit(ei) if i == j else {}
                if self.mul(self.unit(ei), self.unit(ej)) != want:
                    return False
        one = self.one()
        return all(self.mul(one, self.unit(k)) == self.unit(k) == self.mul(self.unit(k), one)
                   for k in range(len(self.basis)))

    def __repr__(self):
        return f"FDAlgebra(dim={self.dimension}, vertices={list(self.vertices)})"


def build(rs: ReductionSystem, check: bool = True) -> FDAlgebra:
    """Multiplication table of the quotient from normal forms of products of irreducible paths."""
    q, F = rs.quiver, rs.field
    qb = quotient_basis(rs)
    basis = []
    for s in range(q.n_vertices):
        for t in range(q.n_vertices):
            for p in qb[s, t]:
                label = q.word_name(p.arrows) if p.arrows else f"e_{q.vertices[s]}"
                basis.append(BasisElement(s, t, p.arrows, label))
    index = {(b.source, b.word): k for k, b in enumerate(basis)}
    by_source: dict = {}
    for k, b in enumerate(basis):
        by_source.setdefault(b.source, []).append(k)
    mult = {}
    for i, bi in enumerate(basis):
        for j in by_source.get(bi.target, []):
            w = bi.word + basis[j].word
            if len(w) > rs.bound:
                continue
            nf = rs.nf_word(w) if w else {(): F.one}
            if nf:
                mult[i, j] = {index[(bi.source, z)]: c for z, c in nf.items()}
    gens = [Generator(q.arrows[a], q.source[a], q.target[a], index[(q.source[a], (a,))])
            for a in range(q.n_arrows) if (q.source[a], (a,)) in index]
    A = FDAlgebra(F, q.vertices, basis, mult, gens, q, rs)
    if check:
        n = len(basis)
        ok = A.check_associativity(None if n <= ASSOC_FULL_LIMIT else 4000)
        if not ok or not A.check_idempotents():
            raise ArithmeticError("structure constants failed the associativity or idempotent check")
    return A


def cartan(A: FDAlgebra) -> list[list[int]]:
    return [row[:] for row in A.dims]


# ---------- socle ----------

def socle(A: FDAlgebra, i) -> list[dict]:
    """Basis of soc(e_i A) = {x in e_i A : x * arrow = 0 for every arrow}."""
    i = A.vertex(i)
    F = A.field
    rows = [k for k, b in enumerate(A.basis) if b.source == i]
    eqs = {}
    for g in A.generators:
        for pos, k in enumerate(rows):
            for r, c in A.mul(A.unit(k), A.unit(g.index)).items():
                eqs.setdefault((g.index, r), {})[pos] = c
    ker = sparse_nullspace(eqs.values(), len(rows), F)
    return [{rows[p]: c for p, c in enumerate(v) if c != 0} for v in ker]


# ---------- symmetrizing forms ----------

@dataclass
class FormVerdict:
    status: str  # "found", "none" or "inconclusive"
    form: list | None
    solution_dim: int
    candidates_tried: int
    policy: str = ""

    @property
    def found(self) -> bool:
        return self.status == "found"


def trace_forms(A: FDAlgebra) -> list[list]:
    """Basis of the linear forms vanishing on all commutators of basis elements."""
    F, n = A.field, len(A.basis)
    rows = []
    for i in range(n):
        for j in range(i + 1, n):
            x, y = A.mult.get((i, j), {}), A.mult.get((j, i), {})
            if not x and not y:
                continue
            row = dict(x)
            for k, c in y.items():
                row[k] = F.sub(row.get(k, F.zero), c)
            row = {k: c for k, c in row.items() if c != 0}
            if row:
                rows.append(row)
    return sparse_nullspace(rows, n, F)


def is_nondegenerate(A: FDAlgebra, phi: Sequence) -> bool:
    """Full rank of (x, y) -> phi(xy), checked block by block on the slices e_s A e_t x e_t A e_s."""
    F, nv = A.field, len(A.vertices)
    slices = {(s, t): A.slice(s, t) for s in range(nv) for t in range(nv)}
    for (s, t), rows in slices.items():
        cols = slices[t, s]
        if len(rows) != len(cols):
            return False
        if not rows:
            continue
        G = []
        for i in rows:
            G.append([_apply(F, phi, A.mult.get((i, j), {})) for j in cols])
        if rank(G, F) != len(rows):
            return False
    return True


def _apply(F: Field, phi, vec: dict):
    acc = F.zero
    for k, c in vec.items():
        if phi[k] != 0:
            acc = F.add(acc, F.mul(phi[k], c))
    return acc


def _symmetry_obstruction(A: FDAlgebra) -> str:
    """An exact reason no symmetrizing form can exist, or "".

    Each e_i A is indecomposable because e_i A e_i is local, so a symmetric
    (hence self-injective) algebra has simple socles and a symmetric Cartan matrix.
    """
    nv = len(A.vertices)
    for i in range(nv):
        for j in range(i + 1, nv):
            if A.dims[i][j] != A.dims[j][i]:
                return f"Cartan matrix not symmetric at ({A.vertices[i]}, {A.vertices[j]})"
    for i in range(nv):
        d = len(socle(A, i))
        if d != 1:
            return f"soc(e_{A.vertices[i]}A) has dimension {d}"
    return ""


def symmetrizing_form(A: FDAlgebra, seed: int = 0, samples: int = FORM_SAMPLES) -> FormVerdict:
    """Search the space of trace forms for a nondegenerate one.

    Exact obstructions (a non-simple socle, an asymmetric Cartan matrix) are
    checked first.  Candidates are the basis of the solution space, then seeded random
    combinations.  Over a prime field a solution space with at most three
    dimensions (and at most EXHAUSTIVE_LIMIT vectors) is searched exhaustively
    and the verdict is exact; otherwise failed sampling is reported as
    "inconclusive".  Over Q a nonzero determinant polynomial survives a random
    integer point with overwhelming probability, so failure means "none".
    """
    F = A.field
    obstruction = _symmetry_obstruction(A)
    sols = trace_forms(A)
    k = len(sols)
    if obstruction:
        return FormVerdict("none", None, k, 0, obstruction)
    if k == 0:
        return FormVerdict("none", None, 0, 0, "no trace forms")
    tried = 0

    def combo(coeffs):
        out = [F.zero] * len(A.basis)
        for c, v in zip(coeffs, sols):
            if c == 0:
                continue
            for idx, x in enumerate(v):
                if x != 0:
                    out[idx] = F.add(out[idx], F.mul(c, x))
        return out

    for v in sols:
        tried += 1
        if is_nondegenerate(A, v):
            return FormVerdict("found", v, k, tried, "basis candidate")
    if F.is_finite and k <= 3 and F.p ** k <= EXHAUSTIVE_LIMIT:
        for coeffs in itertools.product(range(F.p), repeat=k):
            if not any(coeffs):
                continue
            tried += 1
            v = combo(coeffs)
            if is_nondegenerate(A, v):
                return FormVerdict("found", v, k, tried, "exhaustive")
        return FormVerdict("none", None, k, tried, "exhaustive")
    rng = random.Random(seed)
    for _ in range(samples):
        tried += 1
        v = combo([F.random_element(rng) for _ in sols])
        if is_nondegenerate(A, v):
            return FormVerdict("found", v, k, tried, f"random (seed {seed})")
    status = "inconclusive" if F.is_finite else "none"
    return FormVerdict(status, None, k, tried, f"random (seed {seed}, {samples} samples)")


# ---------- corner algebras ----------

def corner(A: FDAlgebra, vertices: Sequence) -> FDAlgebra:
    """The algebra eAe for e the sum of the given vertex idempotents, with its Gabriel quiver."""
    keep = sorted({A.vertex(v) for v in vertices})
    if not keep:
        raise ValueError("corner needs at least one vertex")
    F = A.field
    vmap = {v: i for i, v in enumerate(keep)}
    old = [k for k, b in enumerate(A.basis) if b.source in vmap and b.target in vmap]
    new_index = {k: i for i, k in enumerate(old)}
    basis = [BasisElement(vmap[A.basis[k].source], vmap[A.basis[k].target], A.basis[k].word, A.basis[k].label)
             for k in old]
    mult = {}
    for i, ki in enumerate(old):
        for j, kj in enumerate(old):
            prod = A.mult.get((ki, kj))
            if prod:
                mult[i, j] = {new_index[k]: c for k, c in prod.items()}
    # radical = span of non-idempotent basis elements; arrows = complement of rad^2 in rad
    rad = [i for i, b in enumerate(basis) if b.length != 0]
    ech = SparseEchelon(F, lambda k: k)
    for i in rad:
        for j in rad:
            prod = mult.get((i, j))
            if prod:
                ech.add(prod)
    rows = [[ech.pivots[p].get(k, F.zero) for k in rad] for p in ech.pivots]
    order = sorted(range(len(rad)), key=lambda t: (-basis[rad[t]].length, t))
    permuted = [[r[t] for t in order] for r in rows]
    comp = [rad[order[t]] for t in complement_indices(permuted, F, len(rad))]
    comp.sort(key=lambda k: (basis[k].source, basis[k].target, basis[k].length, k))
    names = [A.vertices[v] for v in keep]
    gens, triples = [], []
    for k in comp:
        b = basis[k]
        name = b.label.replace("*", "_")
        gens.append(Generator(name, b.source, b.target, k))
        triples.append((name, names[b.source], names[b.target]))
    corner_quiver = Quiver(names, triples) if triples or len(names) == 1 else None
    C = FDAlgebra(F, names, basis, mult, gens)
    C.corner_quiver = corner_quiver
    return C
