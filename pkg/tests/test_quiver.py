import pytest

from qaw.quiver import (
    Block,
    Quiver,
    QuiverError,
    WeightData,
    almost_spherical_blocks,
    builtin,
    full_triangle_blocks,
    glue_blocks,
    spherical_blocks,
    triangle_permutation,
    validate_triangulation,
    virtual_arrows,
)


def names(tq, arrows):
    return {tq.quiver.arrows[a] for a in arrows}


def test_qfull_g_orbits():
    tq = builtin("Qfull")
    assert sorted(map(sorted, tq.orbit_names())) == sorted(
        map(sorted, [("alpha", "beta", "gamma", "sigma"), ("rho", "omega", "nu", "delta"), ("xi", "eta"),
                     ("epsilon", "mu")]))
    assert sorted(len(o) for o in tq.g_orbits) == [2, 2, 4, 4]
    assert sum(len(o) for o in tq.g_orbits) == tq.quiver.n_arrows


def test_g_is_bar_after_f():
    tq = builtin("Qfull")
    assert sorted(tq.g) == list(range(tq.quiver.n_arrows))
    for a in range(tq.quiver.n_arrows):
        assert tq.g[a] == tq.bar[tq.f[a]]
        assert tq.bar[tq.bar[a]] == a


def test_single_loop_is_not_two_regular():
    q = Quiver(["v"], [("x", "v", "v")])
    with pytest.raises(QuiverError):
        validate_triangulation(q, "(x)")


def test_transposition_is_rejected():
    q = builtin("Qfull").quiver
    bad = "(alpha xi)(delta)(eta beta nu)(rho epsilon sigma)(gamma mu omega)"
    with pytest.raises(QuiverError):
        validate_triangulation(q, bad)


def test_builtin_shapes():
    qs = builtin("QS")
    assert (qs.n_vertices, qs.n_arrows) == (6, 8)
    assert [qs.degree(qs.vertex(v)) for v in ("1", "2")] == [(2, 2), (2, 2)]
    assert all(qs.degree(qs.vertex(v)) == (1, 1) for v in ("b1", "b2", "d1", "d2"))
    qp = builtin("QSprime")
    assert qp.n_arrows == 10
    assert qp.degree(qp.vertex("d1")) == (2, 2) and qp.degree(qp.vertex("b2")) == (2, 2)
    qf = builtin("Qfull").quiver
    assert (qf.n_vertices, qf.n_arrows) == (6, 12) and qf.is_two_regular()
    with pytest.raises(QuiverError):
        builtin("Q7")


def weights(m_xi, m_eps, m=1, mp=1):
    tq = builtin("Qfull")
    return tq, WeightData.from_orbits(tq, {"alpha": m, "rho": mp, "xi": m_xi, "epsilon": m_eps})


def test_virtual_arrows_spherical():
    tq, w = weights(1, 1, 2, 3)
    assert names(tq, virtual_arrows(tq, w)) == {"xi", "eta", "epsilon", "mu"}


def test_virtual_arrows_almost_spherical():
    tq, w = weights(1, 2)
    assert names(tq, virtual_arrows(tq, w)) == {"xi", "eta"}


def test_no_virtual_arrows():
    tq, w = weights(2, 2)
    assert virtual_arrows(tq, w) == set()


def test_weight_validation():
    tq, w = weights(1, 1)
    w.validate(tq)
    w.c["alpha"] = 0
    with pytest.raises(QuiverError):
        w.validate(tq)


def test_conflicting_orbit_weights():
    tq = builtin("Qfull")
    with pytest.raises(QuiverError):
        WeightData.from_orbits(tq, {"alpha": 1, "beta": 2})


def test_glue_two_v2_blocks_gives_qs():
    q = glue_blocks(*spherical_blocks())
    assert sorted(q.arrow_triples()) == sorted(builtin("QS").arrow_triples())


def test_glue_almost_spherical():
    q = glue_blocks(*almost_spherical_blocks())
    assert sorted(q.arrow_triples()) == sorted(builtin("QSprime").arrow_triples())


def test_glue_four_triangles_is_two_regular():
    blocks, matching = full_triangle_blocks()
    q = glue_blocks(blocks, matching)
    assert q.is_two_regular()
    tq = validate_triangulation(q, triangle_permutation(blocks))
    assert sorted(len(o) for o in tq.g_orbits) == [2, 2, 4, 4]


def test_glue_types_one_and_two():
    blocks = [Block("I", ("x",), ("l",)), Block("II", ("y", "c"), ("p", "q", "r"))]
    q = glue_blocks(blocks, [((0, "x"), (1, "y"))])
    assert q.is_biregular()
    assert all(q.degree(v)[0] == q.degree(v)[1] in (1, 2) for v in range(q.n_vertices))


def test_glue_rejects_unmatched():
    blocks, matching = spherical_blocks()
    with pytest.raises(QuiverError):
        glue_blocks(blocks, matching[:1])


def test_quiver_rejects_unknown_vertex():
    with pytest.raises(QuiverError):
        Quiver(["a"], [("x", "a", "b")])
