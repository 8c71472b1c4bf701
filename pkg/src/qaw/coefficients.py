"""Exact coefficient fields: the rationals and prime fields F_p.

Elements are plain Python objects (``Fraction`` for Q, ``int`` in ``[0, p)``
for F_p) so that they hash and compare structurally.  All arithmetic goes
through the field object.
"""

from __future__ import annotations

import operator
import random
import re
from fractions import Fraction


class FieldError(ValueError):
    pass


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class Field:
    """The rationals (``p is None``) or the prime field of order ``p``."""

    __slots__ = ("p", "zero", "one", "add", "sub", "mul", "neg")

    def __init__(self, p: int | None = None):
        if p is not None and not _is_prime(p):
            raise FieldError(f"{p} is not prime")
        self.p = p
        if p is None:
            self.zero = Fraction(0)
            self.one = Fraction(1)
            self.add = operator.add
            self.sub = operator.sub
            self.mul = operator.mul
            self.neg = operator.neg
        else:
            self.zero = 0
            self.one = 1
            self.add = lambda a, b: (a + b) % p
            self.sub = lambda a, b: (a - b) % p
            self.mul = lambda a, b: (a * b) % p
            self.neg = lambda a: (-a) % p

    @property
    def kind(self) -> str:
        return "rationals" if self.p is None else "prime"

    @property
    def is_finite(self) -> bool:
        return self.p is not None

    @property
    def characteristic(self) -> int:
        return 0 if self.p is None else self.p

    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __str__(self):
        return "Q" if self.p is None else f"F{self.p}"

    def __repr__(self):
        return f"Field({str(self)!r})"

    def __reduce__(self):
        return (Field, (self.p,))

    def __call__(self, x) -> Fraction | int:
        """Coerce an int, Fraction, field element or numeric string."""
        if isinstance(x, str):
            try:
                x = Fraction(x.strip())
            except (ValueError, ZeroDivisionError) as exc:
                raise FieldError(f"not a scalar literal: {x!r}") from exc
        if self.p is None:
            return Fraction(x)
        if isinstance(x, Fraction):
            den = x.denominator % self.p
            if den == 0:
                raise FieldError(f"{x} has no image in {self}")
            return (x.numerator * pow(den, -1, self.p)) % self.p
        return int(x) % self.p

    def is_zero(self, a) -> bool:
        return a == 0

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.p is None:
            return 1 / a
        return pow(a, -1, self.p)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def random_element(self, rng: random.Random, bound: int = 10**6):
        """A uniformly random element (F_p) or a random integer in [-bound, bound] (Q)."""
        if self.p is None:
            return Fraction(rng.randint(-bound, bound))
        return rng.randrange(self.p)

    def elements(self):
        if self.p is None:
            raise FieldError("Q is infinite")
        return range(self.p)

    def format(self, a) -> str:
        if self.p is None:
            return str(a)
        return str(int(a))


QQ = Field()

_FIELD_NAME = re.compile(r"^\s*(?:(Q|QQ)|F_?(\d+)|GF\((\d+)\))\s*$")


def field_make(name: str) -> Field:
    """Parse ``"Q"`` or ``"F<p>"`` into a Field."""
    if isinstance(name, Field):
        return name
    m = _FIELD_NAME.match(str(name))
    if not m:
        raise FieldError(f"malformed field name {name!r}; expected 'Q' or 'F<p>'")
    if m.group(1):
        return QQ
    return Field(int(m.group(2) or m.group(3)))
