from fractions import Fraction

import pytest

from instances import algebra, system
from qaw.algebra import build, cartan
from qaw.battery import periods
from qaw.coefficients import QQ, Field
from qaw.families import (
    FamilyError,
    FamilyParams,
    almost_spherical,
    from_params,
    hsa,
    spherical,
    spherical_weights,
    substitute,
    wsa,
    wsa_relations,
)
from qaw.groebner import complete, dimension_matrix
from qaw.paths import parse_element
from qaw.quiver import builtin


def same_ideal(p1, p2) -> bool:
    rs1, rs2 = complete(p1), complete(p2)
    return all(not rs2.normal_form(r) for r in p1.relations) and all(not rs1.normal_form(r) for r in p2.relations)


def invariants(p):
    A = build(complete(p))
    return A.dims, cartan(A), [r[0] for r in periods(A)]


def test_spherical_relation_count():
    p = spherical(1, 1, 1, 1)
    assert len(p.relations) == 24
    assert p.labels[:8] == ["S1a", "S1b", "S2a", "S2b", "S3a", "S3b", "S4a", "S4b"]
    assert p.labels[8:] == [f"Z{k}" for k in range(1, 17)]
    assert sum(map(sum, dimension_matrix(system("spherical", 1, 1, 1, 1)))) == 40


def test_spherical_s1a_at_m2():
    q = builtin("QS")
    assert spherical(2, 1, 1, 1).relation("S1a") == parse_element(
        "beta*nu*delta - beta*gamma*sigma*alpha*beta*gamma*sigma", q)


@pytest.mark.parametrize("kw", [{"a": 0}, {"b": 0}])
def test_spherical_rejects_zero_scalars(kw):
    with pytest.raises(FamilyError):
        spherical(1, 1, **kw)


def test_spherical_rejects_zero_weight():
    with pytest.raises(FamilyError):
        spherical(0, 1)


def test_almost_spherical_dimension():
    assert sum(map(sum, dimension_matrix(system("almost_spherical", 1, 1, 2)))) == 44
    assert almost_spherical(1, 1, 2).quiver == builtin("QSprime")


def test_almost_spherical_requires_long_epsilon_cycle():
    with pytest.raises(FamilyError):
        almost_spherical(1, 1, 1)


def test_hsa_relations_and_dimension():
    p = hsa(2, 1)
    q = p.quiver
    assert p.relation("H2b") == parse_element("alpha*beta*nu - rho*omega*nu", q)
    assert sum(map(sum, dimension_matrix(system("hsa", 2, 1)))) == 76
    rs = system("hsa", 2, 3)
    assert rs.nf("(alpha*beta*gamma*sigma)^2")
    assert not rs.nf("(alpha*beta*gamma*sigma)^3")


def test_hsa_parameter_errors():
    with pytest.raises(FamilyError):
        hsa(1, 1)
    with pytest.raises(FamilyError):
        hsa(2, 0)


def test_wsa_relation_i_at_beta_is_virtual_substitution():
    tq, w = spherical_weights(1, 1)
    rels = dict(wsa_relations(tq, w))
    assert rels["i_beta"] == [(QQ.one, ["beta", "nu"]), (-QQ.one, ["xi"])]


@pytest.mark.parametrize("m,mp,a,b", [(1, 1, 1, 1), (1, 2, 1, 1), (2, 1, 1, 1), (2, 2, 1, 1), (1, 1, 3, 2)])
def test_wsa_reproduces_spherical(m, mp, a, b):
    tq, w = spherical_weights(m, mp, a, b)
    p = wsa(tq, w)
    s = spherical(m, mp, a, b)
    assert p.quiver == s.quiver == builtin("QS")
    assert same_ideal(p, s)


def test_wsa_reproduces_almost_spherical():
    tq, w = spherical_weights(1, 1, eps_weight=2)
    p = wsa(tq, w)
    assert p.quiver == builtin("QSprime")
    assert same_ideal(p, almost_spherical(1, 1, 2))


def test_almost_spherical_without_closing_relations_is_larger():
    # the two extra relations are what makes the quotient finite-dimensional at the bound
    p = almost_spherical(1, 1, 2, closing=False)
    assert not complete(p).finite


def test_substitute_rescaling_keeps_invariants():
    p = spherical(1, 1, 2, 1)
    q = p.quiver
    p2 = substitute(p, "rho", parse_element("2*rho", q))
    assert invariants(p2) == invariants(p)


def test_substitute_unit_in_hsa():
    p = hsa(2, 1)
    q = p.quiver
    p2 = substitute(p, "rho", parse_element("rho + alpha*beta*gamma*sigma*rho", q))
    assert invariants(p2) == invariants(p)


def test_substitute_rejects_non_parallel_and_non_units():
    p = spherical(1, 1)
    q = p.quiver
    with pytest.raises(FamilyError):
        substitute(p, "rho", parse_element("beta", q))
    with pytest.raises(FamilyError):
        substitute(p, "rho", parse_element("alpha*beta*gamma*sigma*rho", q))


def test_from_params_dispatch():
    fp = FamilyParams("spherical", {"m": 1, "mp": 1}, {"a": "2", "b": "1"}, Field(7))
    p = from_params(fp)
    assert p.field == Field(7) and p.params["a"] == 2
    assert fp.to_json()["field"] == "F7"
    with pytest.raises(FamilyError):
        from_params(FamilyParams("tetrahedral"))


def test_rational_parameters():
    p = spherical(1, 1, Fraction(1, 2), 3)
    assert p.params["a"] == Fraction(1, 2)
    A = algebra("spherical", 1, 1, 1, 2)
    assert A.dimension == 40


def test_family_params_accepts_field_name():
    fp = FamilyParams("spherical", {"m": 1, "mp": 1}, {"a": "2", "b": "1"}, "F7")
    assert str(fp.field) == "F7" and fp.to_json()["scalars"] == {"a": "2", "b": "1"}
