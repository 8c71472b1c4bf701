"""Degree-truncated noncommutative Groebner bases for path algebra quotients.

Everything happens in the truncated path algebra KQ / J^(D+1), where D is the
presentation's degree bound: words longer than D are zero.  When the ideal
contains J^N for some N <= D (the admissible, finite-dimensional case) the
truncation is invisible and the computed quotient is exactly KQ/I.

The term order is degree first, then lexicographic in declared arrow order.
Rules are ``tip -> tail`` with the tip the largest word of a monic ideal
element.  Completion resolves overlap ambiguities between rules together with
the ambiguities created by truncation (a rule tip sitting inside a word of
length D+1), which is the full ambiguity list of the diamond lemma for the
truncated algebra.  An optional closure pass certifies the result directly:
the kernel of the normal-form projection must be a two-sided ideal.
"""

from __future__ import annotations

import heapq
import time
from dataclasses import dataclass, field

from .coefficients import Field
from .linalg import SparseEchelon
from .paths import Path, PathElement, word_key
from .quiver import Quiver

DEFAULT_MAX_RULES = 20000


class PresentationError(ValueError):
    pass


class CompletionBudgetExceeded(RuntimeError):
    pass


class DegreeOverflow(ValueError):
    pass


class InfiniteDimensional(ValueError):
    """No witness of J^N = 0 below the degree bound (inconclusive, not a proof)."""


@dataclass
class Presentation:
    quiver: Quiver
    field: Field
    relations: list[PathElement]
    labels: list[str] | None = None
    degree_bound: int | None = None
    params: dict = field(default_factory=dict)
    name: str = ""
    triangulation: str | None = None
    sources: list[str] | None = None

    def __post_init__(self):
        self.relations = list(self.relations)
        if self.labels is None:
            self.labels = [f"r{i + 1}" for i in range(len(self.relations))]
        self.labels = list(self.labels)
        if len(self.labels) != len(self.relations):
            raise PresentationError("one label per relation")
        if self.sources is not None and len(self.sources) != len(self.relations):
            raise PresentationError("one source text per relation")
        if len(set(self.labels)) != len(self.labels):
            raise PresentationError("relation labels must be unique")
        for lab, r in zip(self.labels, self.relations):
            if r.quiver != self.quiver:
                raise PresentationError(f"relation {lab} lives over another quiver")
            if r.terms and r.min_degree < 2:
                raise PresentationError(f"relation {lab} has a term of length < 2 (ideal not inside J^2)")
        maxdeg = max((r.degree for r in self.relations), default=0)
        if self.degree_bound is None:
            self.degree_bound = max(8, 2 * maxdeg + 2)
        if self.degree_bound < maxdeg:
            raise PresentationError(f"degree bound {self.degree_bound} below relation degree {maxdeg}")

    def relation(self, label: str) -> PathElement:
        return self.relations[self.labels.index(label)]

    def with_bound(self, bound: int) -> "Presentation":
        return Presentation(self.quiver, self.field, self.relations, self.labels, bound, dict(self.params),
                            self.name, self.triangulation, self.sources)


# ---------- word helpers ----------

def paths_by_length(q: Quiver, bound: int, *, from_vertex: bool = True) -> dict:
    """Map (vertex, length) -> words of that length starting (or ending) at vertex."""
    out = {}
    for v in range(q.n_vertices):
        layer = [()]
        out[v, 0] = layer
        for L in range(1, bound + 1):
            nxt = []
            for w in layer:
                if from_vertex:
                    end = q.target[w[-1]] if w else v
                    nxt.extend(w + (a,) for a in q.out_arrows[end])
                else:
                    start = q.source[w[0]] if w else v
                    nxt.extend((a,) + w for a in q.in_arrows[start])
            out[v, L] = nxt
            layer = nxt
    return out


def _contains(big: tuple, small: tuple) -> bool:
    n, k = len(big), len(small)
    return any(big[i:i + k] == small for i in range(n - k + 1))


def _overlaps(a: tuple, b: tuple):
    """Yield (u, v) with a = u w, b = w v for nonempty proper w (u, v nonempty)."""
    for k in range(1, min(len(a), len(b))):
        if a[-k:] == b[:k]:
            yield a[:-k], b[k:]


class ReductionSystem:
    """Rewriting rules ``tip -> tail`` in the truncated path algebra."""

    def __init__(self, quiver: Quiver, field: Field, bound: int, presentation: Presentation | None = None):
        self.quiver = quiver
        self.field = field
        self.bound = bound
        self.presentation = presentation
        self.rules: dict[tuple, dict] = {}
        self.confluent = False
        self.stats: dict = {}
        self._lengths: list[int] = []
        self._memo: dict = {}
        self._irr = None
        self._radical = None

    # -- rule bookkeeping
    def _reset(self):
        self._lengths = sorted({len(t) for t in self.rules})
        self._memo = {}
        self._irr = None
        self._radical = None

    def _find(self, w: tuple):
        rules, lens, n = self.rules, self._lengths, len(w)
        for i in range(n):
            for L in lens:
                if i + L > n:
                    break
                if w[i:i + L] in rules:
                    return i, L
        return None

    def is_reducible(self, w: tuple) -> bool:
        return self._find(w) is not None

    # -- normal forms
    def nf_word(self, w: tuple) -> dict:
        """Normal form of a word as ``{irreducible word: coefficient}`` (memoised)."""
        memo = self._memo
        hit = memo.get(w)
        if hit is not None:
            return hit
        F, D, rules = self.field, self.bound, self.rules
        stack = [w]
        while stack:
            x = stack[-1]
            if x in memo:
                stack.pop()
                continue
            occ = self._find(x)
            if occ is None:
                memo[x] = {x: F.one}
                stack.pop()
                continue
            i, L = occ
            u, v = x[:i], x[i + L:]
            tail = rules[x[i:i + L]]
            extra = len(u) + len(v)
            kids = [u + s + v for s in tail if len(s) + extra <= D]
            missing = [k for k in kids if k not in memo]
            if missing:
                stack.extend(missing)
                continue
            res: dict = {}
            for s, c in tail.items():
                if len(s) + extra > D:
                    continue
                for z, d in memo[u + s + v].items():
                    res[z] = F.add(res.get(z, F.zero), F.mul(c, d))
            memo[x] = {z: c for z, c in res.items() if c != 0}
            stack.pop()
        return memo[w]

    def reduce(self, poly: dict) -> dict:
        F, D = self.field, self.bound
        out: dict = {}
        for w, c in poly.items():
            if c == 0 or len(w) > D:
                continue
            if not w:
                out[w] = F.add(out.get(w, F.zero), c)
                continue
            for z, d in self.nf_word(w).items():
                out[z] = F.add(out.get(z, F.zero), F.mul(c, d))
        return {z: c for z, c in out.items() if c != 0}

    def normal_form(self, x: PathElement) -> PathElement:
        """The irreducible representative of x modulo the ideal."""
        if x.terms and x.degree > self.bound and not self.finite:
            raise DegreeOverflow(f"degree {x.degree} exceeds bound {self.bound}")
        return PathElement(self.quiver, self.field, x.source, x.target, self.reduce(x.terms))

    def nf(self, text: str, params=None) -> PathElement:
        """Parse and reduce; convenience for interactive use."""
        from .paths import parse_element

        p = params if params is not None else (self.presentation.params if self.presentation else {})
        return self.normal_form(parse_element(text, self.quiver, self.field, p))

    # -- quotient basis
    def irreducible_words(self) -> list[tuple[int, tuple]]:
        """All (source vertex, word) with the word irreducible, words of length <= bound."""
        if self._irr is not None:
            return self._irr
        q, rules, lens, D = self.quiver, self.rules, self._lengths, self.bound
        out = []
        for v in range(q.n_vertices):
            out.append((v, ()))
            stack = [(a,) for a in reversed(q.out_arrows[v]) if (a,) not in rules]
            while stack:
                w = stack.pop()
                out.append((v, w))
                if len(w) == D:
                    continue
                for a in reversed(q.out_arrows[q.target[w[-1]]]):
                    nw = w + (a,)
                    n = len(nw)
                    if any(L <= n and nw[n - L:] in rules for L in lens):
                        continue
                    stack.append(nw)
        self._irr = out
        return out

    @property
    def max_irreducible_length(self) -> int:
        return max(len(w) for _, w in self.irreducible_words())

    def radical_dimensions(self) -> list[int]:
        """dim J^k of the truncated quotient for k = 1, 2, ... up to the first zero.

        Long words may reduce to shorter ones, so the longest irreducible word
        does not determine the nilpotency index; the powers are built directly.
        """
        if self._radical is not None:
            return self._radical
        q, F = self.quiver, self.field
        layer = [self.reduce({(a,): F.one}) for a in range(q.n_arrows)]
        dims = []
        for _ in range(self.bound + 1):
            ech = SparseEchelon(F, word_key)
            for r in layer:
                ech.add(r)
            dims.append(len(ech))
            if not ech.pivots:
                break
            layer = []
            for lead, row in ech.pivots.items():
                for a in q.out_arrows[q.target[lead[-1]]]:
                    layer.append(self.reduce({w + (a,): c for w, c in row.items()}))
        self._radical = dims
        return dims

    @property
    def nilpotency_index(self) -> int:
        """Smallest N with J^N = 0 in the truncated quotient (at most bound + 1)."""
        return len(self.radical_dimensions())

    @property
    def finite(self) -> bool:
        """True when J^D = 0 below the bound D, so the truncation loses nothing."""
        return self.nilpotency_index <= self.bound

    @property
    def complete(self) -> bool:
        return self.confluent and self.finite

    def __repr__(self):
        return f"ReductionSystem({len(self.rules)} rules, bound {self.bound}, complete={self.complete})"


# ---------- completion ----------

class _Completion:
    def __init__(self, rs: ReductionSystem, max_rules: int):
        self.rs = rs
        self.max_rules = max_rules
        self.heap: list = []
        self.seq = 0
        D = rs.bound
        self.fwd = paths_by_length(rs.quiver, D)
        self.bwd = paths_by_length(rs.quiver, D, from_vertex=False)
        self.pushed = 0

    def push(self, poly: dict, weight: int):
        if poly:
            self.seq += 1
            self.pushed += 1
            heapq.heappush(self.heap, (weight, self.seq, poly))

    def _mul(self, u: tuple, tail: dict, v: tuple, sign) -> dict:
        D = self.rs.bound
        F = self.rs.field
        out = {}
        for s, c in tail.items():
            w = u + s + v
            if len(w) <= D:
                out[w] = c if sign is None else F.mul(sign, c)
        return out

    def _combine(self, x: dict, y: dict) -> dict:
        F = self.rs.field
        out = dict(x)
        for w, c in y.items():
            out[w] = F.sub(out.get(w, F.zero), c)
        return {w: c for w, c in out.items() if c != 0}

    def add_rule(self, r: dict):
        rs, F, q, D = self.rs, self.rs.field, self.rs.quiver, self.rs.bound
        tip = max(r, key=word_key)
        inv = F.inv(r[tip])
        tail = {w: F.neg(F.mul(c, inv)) for w, c in r.items() if w != tip}
        for t in [t for t in rs.rules if _contains(t, tip)]:
            old = rs.rules.pop(t)
            poly = {t: F.one}
            poly.update({w: F.neg(c) for w, c in old.items()})
            self.push(poly, len(t))
        rs.rules[tip] = tail
        rs._reset()
        if len(rs.rules) > self.max_rules:
            raise CompletionBudgetExceeded(f"more than {self.max_rules} rules")
        # overlap ambiguities u*tail_g - tail_f*v  (tip_f v = u tip_g)
        for t, t_tail in list(rs.rules.items()):
            for u, v in _overlaps(tip, t):
                self.push(self._combine(self._mul(u, t_tail, (), None), self._mul((), tail, v, None)), len(tip) + len(v))
            if t != tip:
                for u, v in _overlaps(t, tip):
                    self.push(self._combine(self._mul(u, tail, (), None), self._mul((), t_tail, v, None)), len(t) + len(v))
        # truncation ambiguities: tip inside or overlapping a word of length D+1
        if not tail:
            return
        smin = min(len(s) for s in tail)
        L = len(tip)
        s0, t0 = q.source[tip[0]], q.target[tip[-1]]
        for lv in range(D + 1 - L, D - smin + 1):
            for v in self.fwd[t0, lv]:
                self.push(self._mul((), tail, v, None), D + 1)
            for u in self.bwd[s0, lv]:
                self.push(self._mul(u, tail, (), None), D + 1)
        rest = D + 1 - L
        if rest + smin <= D:
            for lu in range(1, rest):
                for u in self.bwd[s0, lu]:
                    for v in self.fwd[t0, rest - lu]:
                        self.push(self._mul(u, tail, v, None), D + 1)

    def drain(self):
        rs = self.rs
        while self.heap:
            _, _, p = heapq.heappop(self.heap)
            r = rs.reduce(p)
            if r:
                self.add_rule(r)

    def interreduce(self):
        rs = self.rs
        for t in list(rs.rules):
            rs.rules[t] = rs.reduce(rs.rules[t])

    def closure_failures(self, limit: int = 200) -> list[dict]:
        """Elements x*(w - nf w) or (w - nf w)*x that do not reduce to zero."""
        rs, q, D, F = self.rs, self.rs.quiver, self.rs.bound, self.rs.field
        bad = []
        for v in range(q.n_vertices):
            for L in range(1, D + 1):
                for w in self.fwd[v, L]:
                    if not rs.is_reducible(w):
                        continue
                    nfw = rs.nf_word(w)
                    for x in q.in_arrows[v]:
                        elt = {(x,) + w: F.one} if L < D else {}
                        for z, c in nfw.items():
                            if len(z) < D:
                                k = (x,) + z
                                elt[k] = F.sub(elt.get(k, F.zero), c)
                        if rs.reduce(elt):
                            bad.append(elt)
                    for x in q.out_arrows[q.target[w[-1]]]:
                        elt = {w + (x,): F.one} if L < D else {}
                        for z, c in nfw.items():
                            if len(z) < D:
                                k = z + (x,)
                                elt[k] = F.sub(elt.get(k, F.zero), c)
                        if rs.reduce(elt):
                            bad.append(elt)
                    if len(bad) >= limit:
                        return bad
        return bad


def complete(pres: Presentation, max_rules: int = DEFAULT_MAX_RULES, verify: bool = False) -> ReductionSystem:
    """Complete the presentation's ideal to a confluent reduction system up to its degree bound.

    With ``verify=True`` the result is additionally certified by checking that
    the kernel of the normal form map is closed under multiplication by arrows.
    """
    t0 = time.perf_counter()
    rs = ReductionSystem(pres.quiver, pres.field, pres.degree_bound, presentation=pres)
    job = _Completion(rs, max_rules)
    for r in pres.relations:
        if r.terms:
            job.push(dict(r.terms), r.degree)
    rounds = 0
    while True:
        rounds += 1
        job.drain()
        job.interreduce()
        pending = [dict(r.terms) for r in pres.relations if rs.reduce(r.terms)]
        if verify and not pending:
            pending = job.closure_failures()
        if not pending:
            break
        for p in pending:
            job.push(p, max(len(w) for w in p))
    rs.confluent = True
    rs.stats = {
        "rules": len(rs.rules),
        "ambiguities": job.pushed,
        "rounds": rounds,
        "verified": verify,
        "seconds": time.perf_counter() - t0,
    }
    return rs


# ---------- derived queries ----------

def normal_form(x: PathElement, rs: ReductionSystem) -> PathElement:
    return rs.normal_form(x)


def quotient_basis(rs: ReductionSystem) -> dict[tuple[int, int], list[Path]]:
    """Irreducible paths grouped by (source, target); the union is a basis of the quotient."""
    if not rs.finite:
        raise InfiniteDimensional(
            f"J^{rs.bound} is nonzero in the truncated quotient; no finiteness witness below the bound (inconclusive)"
        )
    q = rs.quiver
    out: dict = {(i, j): [] for i in range(q.n_vertices) for j in range(q.n_vertices)}
    for v, w in rs.irreducible_words():
        t = q.target[w[-1]] if w else v
        out[v, t].append(Path(q, v, t, w))
    for k in out:
        out[k].sort(key=lambda p: word_key(p.arrows))
    return out


def dimension_matrix(rs: ReductionSystem) -> list[list[int]]:
    qb = quotient_basis(rs)
    n = rs.quiver.n_vertices
    return [[len(qb[i, j]) for j in range(n)] for i in range(n)]


def admissibility(rs: ReductionSystem) -> tuple[int | None, bool]:
    """(smallest N with J^N = 0 in the quotient, ok).  N is None when no witness exists below the bound."""
    if not rs.finite:
        return None, False
    ok = rs.presentation is None or all(r.min_degree >= 2 for r in rs.presentation.relations if r.terms)
    return rs.nilpotency_index, ok


def minimal_relations(pres: Presentation, rs: ReductionSystem | None = None) -> list[tuple[str, PathElement]]:
    """A minimal generating set of the ideal, chosen among the presentation's relations.

    Elements of I are coordinatised by their coefficients on reducible words;
    JI + IJ is spanned by x(w - nf w) and (w - nf w)x for arrows x and
    reducible words w.  A relation is kept when it is independent of JI + IJ
    and of the relations kept before it.
    """
    rs = rs or complete(pres)
    q, F, D = pres.quiver, pres.field, rs.bound
    fwd = paths_by_length(q, D)
    ech = SparseEchelon(F, word_key)

    def coords(poly: dict) -> dict:
        return {w: c for w, c in poly.items() if c != 0 and rs.is_reducible(w)}

    for v in range(q.n_vertices):
        for L in range(1, D):
            for w in fwd[v, L]:
                if not rs.is_reducible(w):
                    continue
                nfw = rs.nf_word(w)
                for x in q.in_arrows[v]:
                    elt = {(x,) + w: F.one}
                    for z, c in nfw.items():
                        if len(z) < D:
                            elt[(x,) + z] = F.sub(elt.get((x,) + z, F.zero), c)
                    ech.add(coords(elt))
                for x in q.out_arrows[q.target[w[-1]]]:
                    elt = {w + (x,): F.one}
                    for z, c in nfw.items():
                        if len(z) < D:
                            elt[z + (x,)] = F.sub(elt.get(z + (x,), F.zero), c)
                    ech.add(coords(elt))
    kept = []
    for lab, r in zip(pres.labels, pres.relations):
        if r.terms and ech.add(coords(r.terms)):
            kept.append((lab, r))
    return kept
