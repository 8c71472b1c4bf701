import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qaw.coefficients import QQ, Field
from qaw.families import spherical
from qaw.paths import Path, PathElement, PathError, compose, format_element, multiply, parse_element, power_path
from qaw.quiver import builtin

QS = builtin("QS")


def P(*names):
    return Path.of(QS, *names)


def el(text, **params):
    return parse_element(text, QS, QQ, params)


def test_compose_concatenates():
    p = compose(P("beta"), P("nu"))
    assert str(p) == "beta*nu" and QS.vertices[p.source] == "b1" and QS.vertices[p.target] == "d2"
    assert p.length == 2


def test_compose_mismatch_is_zero():
    assert compose(P("beta"), P("delta")) is None
    assert str(compose(P("beta"), P("gamma"))) == "beta*gamma"


def test_compose_with_idempotent():
    assert compose(Path.trivial(QS, "b1"), P("beta")) == P("beta")


def test_multiply_free():
    x = multiply(el("beta*nu"), el("delta"))
    assert x == el("beta*nu*delta")
    assert not multiply(el("beta - beta"), el("alpha"))
    X = el("alpha*beta*gamma*sigma")
    assert multiply(X, X).degree == 8 and len(multiply(X, X).terms) == 1


def test_power_path():
    cycle, prefix = P("alpha", "beta", "gamma", "sigma"), P("alpha", "beta", "gamma")
    for m in (1, 2, 3):
        assert power_path(cycle, m - 1, prefix).length == 4 * m - 1
    assert power_path(cycle, 0, Path.trivial(QS, "1")) == Path.trivial(QS, "1")
    with pytest.raises(PathError):
        power_path(P("alpha"), 1, Path.trivial(QS, "b1"))


def test_parse_s1a_at_m1():
    pres = spherical(1, 1)
    x = el("beta*nu*delta - a*beta*gamma*sigma", a=1)
    assert x == pres.relation("S1a")


def test_parse_z1():
    assert el("alpha*beta*nu*delta*alpha") == spherical(1, 1).relation("Z1")


def test_parse_rejects_non_parallel():
    with pytest.raises(PathError):
        el("beta + alpha")


def test_parse_rejects_unbound_parameter():
    with pytest.raises(PathError):
        el("c*alpha*beta")


def test_parse_exponent_only_on_cycles():
    assert el("(alpha*beta*gamma*sigma)^2") == multiply(el("alpha*beta*gamma*sigma"), el("alpha*beta*gamma*sigma"))
    with pytest.raises(PathError):
        el("(alpha*beta)^2")


def test_parse_equation_and_idempotents():
    assert el("alpha*beta = rho*omega") == el("alpha*beta - rho*omega")
    assert el("e_1*alpha") == el("alpha")


def test_format_round_trip():
    x = el("2*beta*gamma*sigma - 1/3*beta*nu*delta")
    assert parse_element(format_element(x), QS, QQ) == x


def test_prime_field_coefficients():
    F = Field(3)
    x = parse_element("3*alpha*beta + rho*omega", QS, F)
    assert x == parse_element("rho*omega", QS, F)


# random elements supported on paths from vertex 1 to vertex 2 and 2 to 1
_12 = ["alpha*beta", "rho*omega", "alpha*beta*nu*delta*alpha*beta"]
_21 = ["gamma*sigma", "nu*delta", "nu*delta*rho*omega*gamma*sigma"]


def elements(paths):
    coeffs = st.lists(st.integers(-4, 4), min_size=len(paths), max_size=len(paths))
    return coeffs.map(lambda cs: sum((el(p).scale(QQ(c)) for c, p in zip(cs, paths)), PathElement.zero(QS)))


@settings(max_examples=40)
@given(elements(_12), elements(_21), elements(_12))
def test_multiplication_associative_and_distributive(x, y, z):
    assert multiply(multiply(x, y), z) == multiply(x, multiply(y, z))
    assert multiply(x + z, y) == multiply(x, y) + multiply(z, y)


@given(st.lists(st.sampled_from(["alpha", "beta", "gamma", "sigma"]), min_size=1, max_size=8))
def test_length_additive(names):
    # arrows around the alpha cycle always compose in order
    order = ["alpha", "beta", "gamma", "sigma"]
    start = order.index(names[0])
    ws = [order[(start + k) % 4] for k in range(len(names))]
    k = len(ws) // 2 or 1
    p, q = P(*ws[:k]), (P(*ws[k:]) if ws[k:] else None)
    if q is not None:
        assert compose(p, q).length == p.length + q.length
