from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qaw.coefficients import QQ, Field, FieldError, field_make

PRIMES = [2, 3, 5, 7, 101]


def test_field_make_rationals():
    F = field_make("Q")
    assert F == QQ and F.kind == "rationals" and not F.is_finite


def test_field_make_prime():
    F = field_make("F7")
    assert F.p == 7 and F.kind == "prime" and str(F) == "F7"


@pytest.mark.parametrize("name", ["F4", "F1", "F0", "F9"])
def test_field_make_rejects_composite(name):
    with pytest.raises(FieldError):
        field_make(name)


@pytest.mark.parametrize("name", ["R", "F", "7", "Fx", ""])
def test_field_make_rejects_malformed(name):
    with pytest.raises(FieldError):
        field_make(name)


def test_rational_canonical_form():
    assert QQ(Fraction(2, -4)) == Fraction(-1, 2)
    assert QQ(" -6/4 ") == Fraction(-3, 2)
    assert QQ(Fraction(6, 4)).denominator == 2


def test_prime_coercion_of_fractions():
    F = Field(7)
    assert F("1/2") == 4
    with pytest.raises(FieldError):
        F("1/7")


def test_inverse_of_zero():
    with pytest.raises(ZeroDivisionError):
        Field(5).inv(0)


def test_elements_of_finite_field():
    assert list(Field(3).elements()) == [0, 1, 2]
    with pytest.raises(FieldError):
        QQ.elements()


fields = st.sampled_from([QQ] + [Field(p) for p in PRIMES])
scalars = st.fractions(max_denominator=50).filter(lambda x: abs(x) < 10**6)


def _coerce(F, x):
    # denominators divisible by p have no image; replace them by 1
    return F(x) if F.p is None or x.denominator % F.p else F(x.numerator)


@given(fields, scalars, scalars, scalars)
def test_field_axioms(F, a, b, c):
    a, b, c = (_coerce(F, x) for x in (a, b, c))
    add, mul = F.add, F.mul
    assert add(add(a, b), c) == add(a, add(b, c))
    assert mul(mul(a, b), c) == mul(a, mul(b, c))
    assert mul(a, add(b, c)) == add(mul(a, b), mul(a, c))
    assert add(a, F.neg(a)) == F.zero
    assert mul(a, F.one) == a
    if a != 0:
        assert mul(a, F.inv(a)) == F.one
