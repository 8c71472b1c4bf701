import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from instances import pres, system
from qaw.coefficients import QQ
from qaw.groebner import (
    DegreeOverflow,
    InfiniteDimensional,
    Presentation,
    PresentationError,
    admissibility,
    complete,
    dimension_matrix,
    minimal_relations,
    quotient_basis,
)
from qaw.oracle import path_space_dimensions
from qaw.paths import PathElement, multiply, parse_element
from qaw.quiver import Quiver, builtin
from randpres import random_presentation

LOOP = Quiver(["v"], [("x", "v", "v")])


def loop_algebra(power: int, bound: int = 6) -> Presentation:
    return Presentation(LOOP, QQ, [parse_element("x^%d" % power, LOOP)], degree_bound=bound)


def total(rs) -> int:
    return sum(map(sum, dimension_matrix(rs)))


def test_spherical_has_40_irreducible_words():
    rs = system("spherical", 1, 1, 1, 1)
    assert rs.complete
    assert len(rs.irreducible_words()) == 40


def test_single_loop_rule():
    rs = complete(loop_algebra(2))
    assert rs.rules == {(0, 0): {}}


def test_zero_ideal_is_flagged():
    rs = complete(Presentation(builtin("QS"), QQ, [], degree_bound=3))
    assert rs.confluent and not rs.finite and not rs.complete
    with pytest.raises(InfiniteDimensional):
        quotient_basis(rs)
    assert admissibility(rs) == (None, False)


def test_quotient_basis_spherical():
    dims = dimension_matrix(system("spherical", 1, 1, 1, 1))
    q = builtin("QS")
    assert sum(dims[q.vertex("1")]) == 8
    assert sum(dims[q.vertex("b1")]) == 6
    assert sum(map(sum, dims)) == 40


def test_quotient_basis_hsa():
    assert sum(dimension_matrix(system("hsa", 2, 1))[0]) == 14


@pytest.mark.parametrize("m,mp", [(1, 1), (1, 2), (2, 1), (2, 2)])
def test_admissibility_spherical(m, mp):
    assert admissibility(system("spherical", m, mp, 1, 1)) == (max(4 * m, 4 * mp) + 1, True)


def test_admissibility_loop_and_hsa():
    assert admissibility(complete(loop_algebra(2))) == (2, True)
    assert admissibility(system("hsa", 2, 1)) == (9, True)


COMMUTATIVITY = ["S1a", "S1b", "S2a", "S2b", "S3a", "S3b", "S4a", "S4b"]


@pytest.mark.parametrize("a,b,extra", [(1, 1, ["Z3", "Z4", "Z11", "Z12"]), (2, 1, []), (1, 3, [])])
def test_minimal_relations_spherical(a, b, extra):
    # frozen from a brute-force count of I / (JI + IJ) in the truncated path space;
    # at a*b = 1 four zero relations stop being consequences of the others
    case = ("spherical", 1, 1, a, b)
    labels = [lab for lab, _ in minimal_relations(pres(*case), system(*case))]
    assert labels == COMMUTATIVITY + extra


def test_minimal_relations_loop():
    assert len(minimal_relations(loop_algebra(2))) == 1


def test_minimal_relations_drop_multiples():
    r = parse_element("x^3", LOOP)
    p = Presentation(LOOP, QQ, [r, multiply(parse_element("x", LOOP), r)], degree_bound=6)
    assert [lab for lab, _ in minimal_relations(p)] == ["r1"]


def test_degree_overflow_without_finiteness():
    rs = complete(Presentation(builtin("QS"), QQ, [], degree_bound=3))
    with pytest.raises(DegreeOverflow):
        rs.nf("alpha*beta*gamma*sigma")


def test_words_beyond_bound_vanish_when_finite():
    rs = system("spherical", 1, 1, 1, 1)
    assert not rs.nf("(alpha*beta*gamma*sigma)^3")


def test_relation_inside_square_of_radical():
    with pytest.raises(PresentationError):
        Presentation(LOOP, QQ, [parse_element("x", LOOP)])


def test_normal_forms_from_relations():
    rs = system("spherical", 1, 1, 2, 1)
    assert not rs.nf("beta*nu*delta*rho")
    assert rs.nf("beta*nu*delta") == rs.nf("2*beta*gamma*sigma")


@pytest.mark.parametrize("m,mp", [(1, 1), (1, 2), (2, 1), (2, 2)])
def test_socle_word_rotations(m, mp):
    rs = system("spherical", m, mp, 2, 1)
    for cycle, k in ((["alpha", "beta", "gamma", "sigma"], m), (["rho", "omega", "nu", "delta"], mp)):
        for i in range(4):
            rot = "*".join(cycle[i:] + cycle[:i])
            assert rs.nf(f"({rot})^{k}")
            assert not rs.nf(f"({rot})^{k + 1}")


def test_certified_completion_agrees():
    p = pres("hsa", 2, 1)
    assert total(complete(p, verify=True)) == total(system("hsa", 2, 1)) == 76


# ---------- properties ----------

def _random_element(rs, rng, source):
    """A random combination of irreducible paths from ``source`` to a random common target."""
    words = [w for v, w in rs.irreducible_words() if v == source and w]
    if not words:
        return None
    target = rs.quiver.target[rng.choice(words)[-1]]
    words = [w for w in words if rs.quiver.target[w[-1]] == target]
    F = rs.field
    terms = {w: F(rng.randint(-3, 3)) for w in rng.sample(words, min(3, len(words)))}
    return PathElement.from_terms(rs.quiver, F, terms, vertex=source)


FAMILY_CASES = [("spherical", 1, 1, 2, 1), ("spherical", 1, 2, 1, 1), ("hsa", 2, 1), ("almost_spherical", 1, 1, 2)]


@pytest.mark.parametrize("case", FAMILY_CASES)
def test_normal_form_idempotent_and_compatible(case):
    rs = system(*case)
    q, rng = rs.quiver, random.Random(7)
    basis = [(v, w) for v, w in rs.irreducible_words() if len(w) <= rs.bound // 2]
    for v, w in basis:
        for u, z in basis:
            t = q.target[w[-1]] if w else v
            if u != t:
                continue
            x = PathElement.from_word(q, rs.field, w, vertex=v)
            y = PathElement.from_word(q, rs.field, z, vertex=u)
            xy = rs.normal_form(multiply(x, y))
            assert rs.normal_form(xy) == xy
    for _ in range(30):
        v = rng.randrange(q.n_vertices)
        x = _random_element(rs, rng, v)
        if x is None:
            continue
        y = _random_element(rs, rng, x.target)
        if y is None:
            continue
        nx = rs.normal_form(x)
        assert rs.normal_form(nx) == nx
        assert rs.normal_form(multiply(x, y)) == rs.normal_form(multiply(nx, rs.normal_form(y)))


@pytest.mark.parametrize("case", FAMILY_CASES[:3])
def test_oracle_equivalence_on_families(case):
    dims, finite = path_space_dimensions(pres(*case))
    assert finite and dims == dimension_matrix(system(*case))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**9), st.sampled_from(["Q", "F2", "F3", "F5"]))
def test_oracle_equivalence_random(seed, field):
    p = random_presentation(random.Random(seed), field)
    rs = complete(p)
    dims, finite = path_space_dimensions(p)
    assert rs.finite == finite
    if finite:
        assert dimension_matrix(rs) == dims
