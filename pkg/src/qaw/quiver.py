"""Quivers, triangulation quivers (Q, f) and their weight data, block glueing.

Vertex and arrow identity is by name.  The order in which vertices and arrows
are declared is canonical: every downstream term order and basis ordering is
derived from it.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .coefficients import Field, QQ


class QuiverError(ValueError):
    pass


class Quiver:
    """A finite quiver with named vertices and arrows."""

    def __init__(self, vertices: Sequence[str], arrows: Sequence[tuple[str, str, str]]):
        vertices = tuple(str(v) for v in vertices)
        if len(set(vertices)) != len(vertices):
            raise QuiverError("vertex names must be unique")
        vindex = {v: i for i, v in enumerate(vertices)}
        names, source, target = [], [], []
        for name, s, t in arrows:
            name, s, t = str(name), str(s), str(t)
            if s not in vindex or t not in vindex:
                raise QuiverError(f"arrow {name}: unknown vertex in {s} -> {t}")
            names.append(name)
            source.append(vindex[s])
            target.append(vindex[t])
        if len(set(names)) != len(names):
            raise QuiverError("arrow names must be unique")
        if any(n.startswith("e_") for n in names):
            raise QuiverError("arrow names may not start with 'e_'")
        self.vertices = vertices
        self.arrows = tuple(names)
        self.source = tuple(source)
        self.target = tuple(target)
        self.vindex = vindex
        self.aindex = {a: i for i, a in enumerate(self.arrows)}
        self.out_arrows = tuple(tuple(a for a in range(len(names)) if source[a] == v) for v in range(len(vertices)))
        self.in_arrows = tuple(tuple(a for a in range(len(names)) if target[a] == v) for v in range(len(vertices)))
        isolated = [vertices[v] for v in range(len(vertices)) if not self.out_arrows[v] and not self.in_arrows[v]]
        if isolated and len(vertices) > 1:
            raise QuiverError(f"isolated vertices: {isolated}")

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_arrows(self) -> int:
        return len(self.arrows)

    def arrow(self, name: str) -> int:
        try:
            return self.aindex[name]
        except KeyError:
            raise QuiverError(f"unknown arrow {name!r}") from None

    def vertex(self, name) -> int:
        try:
            return self.vindex[str(name)]
        except KeyError:
            raise QuiverError(f"unknown vertex {name!r}") from None

    def arrow_triples(self) -> list[tuple[str, str, str]]:
        return [(a, self.vertices[self.source[i]], self.vertices[self.target[i]]) for i, a in enumerate(self.arrows)]

    def degree(self, v: int) -> tuple[int, int]:
        """(in-degree, out-degree) of vertex index v."""
        return len(self.in_arrows[v]), len(self.out_arrows[v])

    def is_two_regular(self) -> bool:
        return all(self.degree(v) == (2, 2) for v in range(self.n_vertices))

    def is_biregular(self) -> bool:
        return all(i == o and i in (1, 2) for i, o in map(self.degree, range(self.n_vertices)))

    def subquiver(self, drop_arrows: Iterable[str]) -> "Quiver":
        drop = set(drop_arrows)
        return Quiver(self.vertices, [t for t in self.arrow_triples() if t[0] not in drop])

    def word(self, names: Sequence[str]) -> tuple[int, ...]:
        """Arrow indices of a composable sequence of arrow names."""
        w = tuple(self.arrow(n) for n in names)
        for a, b in zip(w, w[1:]):
            if self.target[a] != self.source[b]:
                raise QuiverError(f"{self.arrows[a]} and {self.arrows[b]} do not compose")
        return w

    def word_name(self, w: Sequence[int]) -> str:
        return "*".join(self.arrows[a] for a in w)

    def __eq__(self, other):
        return (
            isinstance(other, Quiver)
            and self.vertices == other.vertices
            and self.arrow_triples() == other.arrow_triples()
        )

    def __hash__(self):
        return hash((self.vertices, tuple(self.arrow_triples())))

    def __repr__(self):
        return f"Quiver({self.n_vertices} vertices, {self.n_arrows} arrows)"


# ---------- triangulation quivers ----------

_CYCLE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str) -> list[tuple[str, ...]]:
    """Parse cycle notation ``(a b c)(d e f)`` into tuples of names."""
    text = text.strip()
    cycles = [tuple(c.replace(",", " ").split()) for c in _CYCLE.findall(text)]
    if _CYCLE.sub("", text).strip():
        raise QuiverError(f"malformed cycle notation: {text!r}")
    return [c for c in cycles if c]


def cycles_to_permutation(cycles: Iterable[Sequence[str]], domain: Iterable[str]) -> dict[str, str]:
    perm = {a: a for a in domain}
    seen = set()
    for cyc in cycles:
        for i, a in enumerate(cyc):
            if a not in perm:
                raise QuiverError(f"unknown arrow {a!r} in cycle")
            if a in seen:
                raise QuiverError(f"arrow {a!r} appears twice in cycle notation")
            seen.add(a)
            perm[a] = cyc[(i + 1) % len(cyc)]
    return perm


def permutation_orbits(perm: Mapping[int, int], order: Sequence[int]) -> list[tuple[int, ...]]:
    seen, orbits = set(), []
    for a in order:
        if a in seen:
            continue
        orb = [a]
        seen.add(a)
        b = perm[a]
        while b != a:
            orb.append(b)
            seen.add(b)
            b = perm[b]
        orbits.append(tuple(orb))
    return orbits


@dataclass(frozen=True)
class TriangulationQuiver:
    quiver: Quiver
    f: tuple[int, ...]
    bar: tuple[int, ...]
    g: tuple[int, ...]
    g_orbits: tuple[tuple[int, ...], ...]

    def n(self, a: int) -> int:
        """Length of the g-orbit of arrow index a."""
        return len(self.orbit(a))

    def orbit(self, a: int) -> tuple[int, ...]:
        for orb in self.g_orbits:
            if a in orb:
                return orb
        raise KeyError(a)

    def g_path(self, a: int, length: int) -> tuple[int, ...]:
        """The path of the given length along the g-cycle starting with arrow a."""
        w, b = [], a
        for _ in range(length):
            w.append(b)
            b = self.g[b]
        return tuple(w)

    def named(self, perm: tuple[int, ...]) -> dict[str, str]:
        q = self.quiver
        return {q.arrows[a]: q.arrows[perm[a]] for a in range(q.n_arrows)}

    def orbit_names(self) -> list[tuple[str, ...]]:
        return [tuple(self.quiver.arrows[a] for a in o) for o in self.g_orbits]


def validate_triangulation(q: Quiver, f) -> TriangulationQuiver:
    """Check (Q, f) is a triangulation quiver and derive bar, g and the g-orbits.

    ``f`` is cycle notation text, a list of cycles, or a name -> name mapping.
    """
    if isinstance(f, str):
        f = parse_cycles(f)
    if not isinstance(f, Mapping):
        f = cycles_to_permutation(f, q.arrows)
    for v in range(q.n_vertices):
        if q.degree(v) != (2, 2):
            raise QuiverError(f"not 2-regular at vertex {q.vertices[v]}: (in, out) = {q.degree(v)}")
    fi = [None] * q.n_arrows
    for a, b in f.items():
        fi[q.arrow(a)] = q.arrow(b)
    if any(x is None for x in fi) or sorted(fi) != list(range(q.n_arrows)):
        raise QuiverError("f is not a permutation of the arrows")
    for a in range(q.n_arrows):
        if q.source[fi[a]] != q.target[a]:
            raise QuiverError(f"f({q.arrows[a]}) = {q.arrows[fi[a]]} does not start where {q.arrows[a]} ends")
        if fi[fi[fi[a]]] != a:
            raise QuiverError(f"f^3 != id at {q.arrows[a]}")
    bar = [None] * q.n_arrows
    for v in range(q.n_vertices):
        x, y = q.out_arrows[v]
        bar[x], bar[y] = y, x
    g = [bar[fi[a]] for a in range(q.n_arrows)]
    orbits = permutation_orbits(dict(enumerate(g)), range(q.n_arrows))
    return TriangulationQuiver(q, tuple(fi), tuple(bar), tuple(g), tuple(orbits))


@dataclass
class WeightData:
    """Weights m (positive ints) and parameters c (nonzero scalars) on arrows."""

    m: dict[str, int]
    c: dict[str, object]

    @classmethod
    def from_orbits(cls, tq: TriangulationQuiver, m: Mapping[str, int], c: Mapping[str, object] | None = None,
                    field: Field = QQ) -> "WeightData":
        """Extend values given on one arrow per g-orbit to the whole orbit; unspecified values are 1."""
        q = tq.quiver
        mm, cc = {}, {}
        c = c or {}
        for orb in tq.g_orbits:
            names = [q.arrows[a] for a in orb]
            given_m = {m[n] for n in names if n in m}
            given_c = {field(c[n]) for n in names if n in c}
            if len(given_m) > 1 or len(given_c) > 1:
                raise QuiverError(f"conflicting values on g-orbit {names}")
            mv = given_m.pop() if given_m else 1
            cv = given_c.pop() if given_c else field.one
            for n in names:
                mm[n], cc[n] = mv, cv
        return cls(mm, cc)

    def validate(self, tq: TriangulationQuiver, field: Field = QQ) -> None:
        q = tq.quiver
        for orb in tq.g_orbits:
            names = [q.arrows[a] for a in orb]
            if len({self.m[n] for n in names}) != 1 or len({field(self.c[n]) for n in names}) != 1:
                raise QuiverError(f"weights/parameters not constant on g-orbit {names}")
        for a in range(q.n_arrows):
            name = q.arrows[a]
            if self.m[name] < 1:
                raise QuiverError(f"weight of {name} must be positive")
            if self.m[name] * tq.n(a) < 2:
                raise QuiverError(f"m*n < 2 at {name}")
            if field(self.c[name]) == 0:
                raise QuiverError(f"parameter of {name} must be nonzero")
        for a in virtual_arrows(tq, self):
            if field(self.c[q.arrows[a]]) != field.one:
                raise QuiverError(f"virtual arrow {q.arrows[a]} must have parameter 1")
        for a in range(q.n_arrows):
            b = tq.bar[a]
            if b in virtual_arrows(tq, self):
                mn = self.m[q.arrows[a]] * tq.n(a)
                is_loop = q.source[b] == q.target[b]
                if (is_loop and mn < 4) or mn < 3:
                    raise QuiverError(
                        f"m*n = {mn} at {q.arrows[a]} too small: its partner {q.arrows[b]} is virtual"
                    )

    def mn(self, tq: TriangulationQuiver, a: int) -> int:
        return self.m[tq.quiver.arrows[a]] * tq.n(a)


def virtual_arrows(tq: TriangulationQuiver, w: WeightData) -> set[int]:
    """Arrows with m_a * n_a == 2."""
    return {a for a in range(tq.quiver.n_arrows) if w.mn(tq, a) == 2}


# ---------- blocks ----------

BLOCK_SHAPES = {
    # kind: (local vertex roles, local arrows as (src, tgt) positions)
    "I": (("o",), ((0, 0),)),
    "II": (("o", "*"), ((0, 1), (1, 0), (1, 1))),
    "III": (("o", "o", "o"), ((0, 1), (1, 2), (2, 0))),
    "V1": (("*", "o"), ((0, 1), (1, 0))),
    "V2": (("o", "*", "o", "*"), ((0, 1), (1, 2), (2, 3), (3, 0))),
}


@dataclass(frozen=True)
class Block:
    """A block with named vertices and arrows in the canonical positions of its kind.

    ``o`` positions are boundary vertices (to be glued); ``*`` positions are interior.
    """

    kind: str
    vertices: tuple[str, ...]
    arrows: tuple[str, ...]

    def __post_init__(self):
        if self.kind not in BLOCK_SHAPES:
            raise QuiverError(f"unknown block type {self.kind!r}")
        roles, arrs = BLOCK_SHAPES[self.kind]
        if len(self.vertices) != len(roles) or len(self.arrows) != len(arrs):
            raise QuiverError(f"block {self.kind} needs {len(roles)} vertices and {len(arrs)} arrows")

    @property
    def boundary(self) -> tuple[str, ...]:
        roles = BLOCK_SHAPES[self.kind][0]
        return tuple(v for v, r in zip(self.vertices, roles) if r == "o")

    def arrow_triples(self) -> list[tuple[str, str, str]]:
        arrs = BLOCK_SHAPES[self.kind][1]
        return [(n, self.vertices[s], self.vertices[t]) for n, (s, t) in zip(self.arrows, arrs)]


def glue_blocks(blocks: Sequence[Block], matching: Sequence[tuple[tuple[int, str], tuple[int, str]]]) -> Quiver:
    """Glue boundary vertices pairwise.  A glued vertex keeps the name from the first half of its pair."""
    boundary = {(i, v) for i, b in enumerate(blocks) for v in b.boundary}
    rename: dict[tuple[int, str], str] = {}
    used = set()
    for x, y in matching:
        x, y = (x[0], str(x[1])), (y[0], str(y[1]))
        for z in (x, y):
            if z not in boundary:
                raise QuiverError(f"{z} is not a boundary vertex")
            if z in used:
                raise QuiverError(f"{z} glued twice")
            used.add(z)
        if x[0] == y[0]:
            raise QuiverError(f"cannot glue block {x[0]} to itself")
        rename[x] = rename[y] = x[1]
    unmatched = boundary - used
    if unmatched:
        raise QuiverError(f"unmatched boundary vertices: {sorted(unmatched)}")
    vertices: list[str] = []
    arrows = []
    for i, b in enumerate(blocks):
        for v in b.vertices:
            name = rename.get((i, v), v)
            if name not in vertices:
                vertices.append(name)
        for n, s, t in b.arrow_triples():
            arrows.append((n, rename.get((i, s), s), rename.get((i, t), t)))
    # interior vertices must not collide with each other or with glued names
    interior = [rename.get((i, v), v) for i, b in enumerate(blocks) for v in b.vertices if (i, v) not in rename]
    glued = set(rename.values())
    if len(set(interior)) != len(interior) or set(interior) & glued:
        raise QuiverError("interior vertex names collide")
    return Quiver(vertices, arrows)


def triangle_permutation(blocks: Sequence[Block]) -> dict[str, str]:
    """The permutation f rotating the arrows of every type III block."""
    f = {}
    for b in blocks:
        if b.kind != "III":
            continue
        x, y, z = b.arrows
        f.update({x: y, y: z, z: x})
    return f


# ---------- the three quivers of the spherical family ----------

SPHERICAL_VERTICES = ("1", "b1", "2", "b2", "d1", "d2")

_QS_ARROWS = [
    ("alpha", "1", "b1"), ("beta", "b1", "2"), ("gamma", "2", "b2"), ("sigma", "b2", "1"),
    ("rho", "1", "d1"), ("omega", "d1", "2"), ("nu", "2", "d2"), ("delta", "d2", "1"),
]
_EPS_MU = [("epsilon", "d1", "b2"), ("mu", "b2", "d1")]
_XI_ETA = [("xi", "b1", "d2"), ("eta", "d2", "b1")]

QFULL_F = "(alpha xi delta)(eta beta nu)(rho epsilon sigma)(gamma mu omega)"


def builtin(name: str):
    """``QS`` and ``QSprime`` return a Quiver; ``Qfull`` returns a TriangulationQuiver."""
    if name == "QS":
        return Quiver(SPHERICAL_VERTICES, _QS_ARROWS)
    if name == "QSprime":
        return Quiver(SPHERICAL_VERTICES, _QS_ARROWS + _EPS_MU)
    if name == "Qfull":
        return validate_triangulation(Quiver(SPHERICAL_VERTICES, _QS_ARROWS + _XI_ETA + _EPS_MU), QFULL_F)
    raise QuiverError(f"unknown builtin quiver {name!r}; choose QS, QSprime or Qfull")


def spherical_blocks() -> tuple[list[Block], list]:
    """Two V2 blocks whose glueing is Q^S."""
    blocks = [
        Block("V2", ("1", "b1", "2", "d2"), ("alpha", "beta", "nu", "delta")),
        Block("V2", ("1", "d1", "2", "b2"), ("rho", "omega", "gamma", "sigma")),
    ]
    return blocks, [((0, "1"), (1, "1")), ((0, "2"), (1, "2"))]


def almost_spherical_blocks() -> tuple[list[Block], list]:
    """One V2 block and two triangles whose glueing is Q^{S'}."""
    blocks = [
        Block("V2", ("1", "b1", "2", "d2"), ("alpha", "beta", "nu", "delta")),
        Block("III", ("1", "d1", "b2"), ("rho", "epsilon", "sigma")),
        Block("III", ("2", "b2", "d1"), ("gamma", "mu", "omega")),
    ]
    return blocks, [((0, "1"), (1, "1")), ((0, "2"), (2, "2")), ((1, "d1"), (2, "d1")), ((1, "b2"), (2, "b2"))]


def full_triangle_blocks() -> tuple[list[Block], list]:
    """Four triangles whose glueing is the 2-regular quiver Q."""
    blocks = [
        Block("III", ("1", "b1", "d2"), ("alpha", "xi", "delta")),
        Block("III", ("d2", "b1", "2"), ("eta", "beta", "nu")),
        Block("III", ("1", "d1", "b2"), ("rho", "epsilon", "sigma")),
        Block("III", ("2", "b2", "d1"), ("gamma", "mu", "omega")),
    ]
    matching = [
        ((0, "1"), (2, "1")), ((0, "b1"), (1, "b1")), ((0, "d2"), (1, "d2")),
        ((1, "2"), (3, "2")), ((2, "d1"), (3, "d1")), ((2, "b2"), (3, "b2")),
    ]
    return blocks, matching
