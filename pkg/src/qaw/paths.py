"""Paths and finite linear combinations of parallel paths.

A path is stored as a tuple of arrow indices ("word") plus its endpoints, so
the trivial path e_i is the empty word at vertex i.  Words compare by
degree first, then lexicographically by declared arrow order; this is the
term order used everywhere.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Mapping

from .coefficients import Field, QQ
from .quiver import Quiver


class PathError(ValueError):
    pass


def word_key(w: tuple[int, ...]):
    return (len(w), w)


@dataclass(frozen=True)
class Path:
    quiver: Quiver
    source: int
    target: int
    arrows: tuple[int, ...] = ()

    def __post_init__(self):
        q = self.quiver
        if self.arrows:
            if q.source[self.arrows[0]] != self.source or q.target[self.arrows[-1]] != self.target:
                raise PathError("endpoints do not match the arrows")
            for a, b in zip(self.arrows, self.arrows[1:]):
                if q.target[a] != q.source[b]:
                    raise PathError(f"{q.arrows[a]} and {q.arrows[b]} do not compose")
        elif self.source != self.target:
            raise PathError("a trivial path has equal source and target")

    @classmethod
    def trivial(cls, q: Quiver, v) -> "Path":
        i = q.vertex(v) if isinstance(v, str) else v
        return cls(q, i, i, ())

    @classmethod
    def of(cls, q: Quiver, *names: str) -> "Path":
        w = q.word(names)
        if not w:
            raise PathError("use Path.trivial for trivial paths")
        return cls(q, q.source[w[0]], q.target[w[-1]], w)

    @property
    def length(self) -> int:
        return len(self.arrows)

    @property
    def is_cycle(self) -> bool:
        return self.source == self.target

    def __str__(self):
        if not self.arrows:
            return "e_" + self.quiver.vertices[self.source]
        return self.quiver.word_name(self.arrows)


def compose(p: Path, q: Path) -> Path | None:
    """Concatenation p then q, or None (zero) when p does not end where q starts."""
    if p.target != q.source:
        return None
    return Path(p.quiver, p.source, q.target, p.arrows + q.arrows)


def power_path(cycle: Path, k: int, prefix: Path) -> Path:
    """cycle^k followed by prefix (an initial segment continuing from the cycle's base)."""
    if not cycle.is_cycle:
        raise PathError(f"{cycle} is not a cycle")
    if k < 0:
        raise PathError("negative exponent")
    if prefix.source != cycle.target:
        raise PathError(f"{prefix} does not start at the base of {cycle}")
    return Path(cycle.quiver, cycle.source, prefix.target, cycle.arrows * k + prefix.arrows)


class PathElement:
    """A linear combination of parallel paths with exact coefficients.

    ``terms`` maps words to nonzero coefficients.  The zero element has no
    endpoints (``source is None``) and adds to anything.
    """

    __slots__ = ("quiver", "field", "source", "target", "terms")

    def __init__(self, quiver: Quiver, field: Field, source, target, terms: Mapping | None = None):
        self.quiver = quiver
        self.field = field
        self.terms = {w: c for w, c in (terms or {}).items() if c != 0}
        if self.terms:
            self.source, self.target = source, target
        else:
            self.source = self.target = None

    # -- constructors
    @classmethod
    def zero(cls, quiver: Quiver, field: Field = QQ) -> "PathElement":
        return cls(quiver, field, None, None, {})

    @classmethod
    def from_path(cls, p: Path, field: Field = QQ, coeff=None) -> "PathElement":
        c = field.one if coeff is None else field(coeff)
        return cls(p.quiver, field, p.source, p.target, {p.arrows: c})

    @classmethod
    def from_word(cls, quiver: Quiver, field: Field, w: tuple[int, ...], coeff=None, vertex: int | None = None):
        if w:
            s, t = quiver.source[w[0]], quiver.target[w[-1]]
        else:
            s = t = vertex
        return cls(quiver, field, s, t, {w: field.one if coeff is None else coeff})

    @classmethod
    def from_terms(cls, quiver: Quiver, field: Field, terms: Mapping, vertex: int | None = None):
        """Build from a word -> coefficient map, reading endpoints from the words."""
        terms = {w: c for w, c in terms.items() if c != 0}
        if not terms:
            return cls.zero(quiver, field)
        ends = set()
        for w in terms:
            ends.add((quiver.source[w[0]], quiver.target[w[-1]]) if w else (vertex, vertex))
        if len(ends) != 1 or None in next(iter(ends)):
            raise PathError("terms are not parallel paths")
        s, t = ends.pop()
        return cls(quiver, field, s, t, terms)

    # -- queries
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    @property
    def degree(self) -> int:
        return max((len(w) for w in self.terms), default=-1)

    @property
    def min_degree(self) -> int:
        return min((len(w) for w in self.terms), default=-1)

    def leading_word(self) -> tuple[int, ...]:
        return max(self.terms, key=word_key)

    def leading_coefficient(self):
        return self.terms[self.leading_word()]

    def coefficient(self, p) -> object:
        w = p.arrows if isinstance(p, Path) else tuple(p)
        return self.terms.get(w, self.field.zero)

    def words(self) -> list[tuple[int, ...]]:
        return sorted(self.terms, key=word_key, reverse=True)

    # -- arithmetic
    def _check(self, other: "PathElement"):
        if other.quiver is not self.quiver and other.quiver != self.quiver:
            raise PathError("elements live over different quivers")

    def __add__(self, other):
        if not isinstance(other, PathElement):
            if other == 0:
                return self
            return NotImplemented
        self._check(other)
        if not other.terms:
            return self
        if not self.terms:
            return other
        if (self.source, self.target) != (other.source, other.target):
            raise PathError("cannot add non-parallel elements")
        F = self.field
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = F.add(out.get(w, F.zero), c)
        return PathElement(self.quiver, F, self.source, self.target, out)

    __radd__ = __add__

    def __neg__(self):
        F = self.field
        return PathElement(self.quiver, F, self.source, self.target, {w: F.neg(c) for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "PathElement":
        F = self.field
        c = F(c)
        return PathElement(self.quiver, F, self.source, self.target, {w: F.mul(c, v) for w, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, PathElement):
            return multiply(self, other)
        if isinstance(other, Path):
            return multiply(self, PathElement.from_path(other, self.field))
        return self.scale(other)

    def __rmul__(self, other):
        if isinstance(other, Path):
            return multiply(PathElement.from_path(other, self.field), self)
        return self.scale(other)

    def __eq__(self, other):
        if isinstance(other, PathElement):
            return self.terms == other.terms and (not self.terms or (self.source, self.target) == (other.source, other.target))
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash((self.source, self.target, frozenset(self.terms.items())))

    def __str__(self):
        return format_element(self)

    def __repr__(self):
        return f"PathElement({format_element(self)!r})"


def multiply(x: PathElement, y: PathElement) -> PathElement:
    """Bilinear extension of concatenation in the free path algebra."""
    F = x.field
    if not x.terms or not y.terms or x.target != y.source:
        return PathElement.zero(x.quiver, F)
    out: dict = {}
    for u, a in x.terms.items():
        for v, b in y.terms.items():
            w = u + v
            out[w] = F.add(out.get(w, F.zero), F.mul(a, b))
    return PathElement(x.quiver, F, x.source, y.target, out)


def format_element(x: PathElement) -> str:
    """Render in the relation grammar; terms in decreasing term order."""
    if not x.terms:
        return "0"
    q, F = x.quiver, x.field
    parts = []
    for w in x.words():
        c = x.terms[w]
        mono = q.word_name(w) if w else "e_" + q.vertices[x.source]
        neg = False
        if F.p is None and c < 0:
            neg, c = True, -c
        if c == F.one:
            body = mono
        else:
            body = f"{F.format(c)}*{mono}"
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append(("- " if neg else "+ ") + body)
    return " ".join(parts)


# ---------- relation grammar ----------

_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|([A-Za-z_][A-Za-z0-9_']*)|(\S))")


def _tokenize(text: str):
    pos, out = 0, []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            break
        num, ident, op = m.groups()
        if num is not None:
            out.append(("num", num))
        elif ident is not None:
            out.append(("id", ident))
        elif op in "+-*^()=":
            out.append(("op", op))
        else:
            raise PathError(f"unexpected character {op!r} in {text!r}")
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text, quiver: Quiver, field: Field, params: Mapping[str, object]):
        self.toks = _tokenize(text)
        self.i = 0
        self.q, self.F = quiver, field
        self.params = {k: field(v) for k, v in (params or {}).items()}
        self.text = text

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self, kind=None, val=None):
        tok = self.peek()
        if tok[0] is None or (kind and tok[0] != kind) or (val and tok[1] != val):
            raise PathError(f"parse error at token {self.i} in {self.text!r}: expected {val or kind}, got {tok[1]}")
        self.i += 1
        return tok

    def parse(self):
        left = self.element()
        if self.peek() == ("op", "="):
            self.take()
            right = self.element()
            left = self._add(left, self._neg(right))
        if self.i != len(self.toks):
            raise PathError(f"trailing input in {self.text!r} at token {self.peek()[1]!r}")
        if not isinstance(left, PathElement):
            if left != 0:
                raise PathError(f"{self.text!r} is a nonzero scalar, not a path element")
            return PathElement.zero(self.q, self.F)
        return left

    # values are either field scalars or PathElements
    def _neg(self, x):
        return -x if isinstance(x, PathElement) else self.F.neg(x)

    def _add(self, x, y):
        if isinstance(x, PathElement) and isinstance(y, PathElement):
            return x + y
        if isinstance(x, PathElement):
            if y == 0:
                return x
            raise PathError("cannot add a scalar to a path element")
        if isinstance(y, PathElement):
            if x == 0:
                return y
            raise PathError("cannot add a scalar to a path element")
        return self.F.add(x, y)

    def _mul(self, x, y):
        if isinstance(x, PathElement) and isinstance(y, PathElement):
            if x.terms and y.terms and x.target != y.source:
                raise PathError(f"non-composable product in {self.text!r}")
            return multiply(x, y)
        if isinstance(x, PathElement):
            return x.scale(y)
        if isinstance(y, PathElement):
            return y.scale(x)
        return self.F.mul(x, y)

    def element(self):
        sign = None
        if self.peek() in (("op", "+"), ("op", "-")):
            sign = self.take()[1]
        acc = self.term()
        if sign == "-":
            acc = self._neg(acc)
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            t = self.term()
            acc = self._add(acc, t if op == "+" else self._neg(t))
        return acc

    def term(self):
        acc = self.factor()
        while self.peek() == ("op", "*"):
            self.take()
            acc = self._mul(acc, self.factor())
        return acc

    def factor(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            k = int(self.take("num")[1])
            if isinstance(base, PathElement):
                if base.terms and base.source != base.target:
                    raise PathError(f"exponent on a non-cyclic factor in {self.text!r}")
                if k == 0:
                    if not base.terms:
                        raise PathError("0^0 is undefined")
                    return PathElement.from_word(self.q, self.F, (), vertex=base.source)
                out = base
                for _ in range(k - 1):
                    out = multiply(out, base)
                return out
            return self.F(base ** k) if self.F.p is None else pow(base, k, self.F.p)
        return base

    def atom(self):
        kind, val = self.peek()
        if kind == "num":
            self.take()
            return self.F(val)
        if kind == "id":
            self.take()
            if val in self.q.aindex:
                a = self.q.aindex[val]
                return PathElement.from_word(self.q, self.F, (a,))
            if val.startswith("e_") and val[2:] in self.q.vindex:
                return PathElement.from_word(self.q, self.F, (), vertex=self.q.vindex[val[2:]])
            if val in self.params:
                return self.params[val]
            raise PathError(f"unknown arrow or unbound parameter {val!r}")
        if (kind, val) == ("op", "("):
            self.take()
            x = self.element()
            self.take("op", ")")
            return x
        raise PathError(f"parse error in {self.text!r} near {val!r}")


def parse_element(text: str, quiver: Quiver, field: Field = QQ, params: Mapping[str, object] | None = None) -> PathElement:
    """Parse an element of the path algebra; ``lhs = rhs`` denotes lhs - rhs."""
    return _Parser(text, quiver, field, params or {}).parse()
