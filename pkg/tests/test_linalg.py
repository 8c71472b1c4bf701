import random

from hypothesis import given, settings
from hypothesis import strategies as st

from qaw.coefficients import QQ, Field
from qaw.linalg import (
    NotInSpan,
    SparseEchelon,
    coordinates,
    is_invertible,
    left_kernel,
    matmul,
    nullspace,
    rank,
    rref,
    sparse_nullspace,
)


def M(rows, F=QQ):
    return [[F(x) for x in r] for r in rows]


def test_rref_and_rank():
    R, piv = rref(M([[1, 2, 3], [2, 4, 6], [0, 1, 1]]), QQ)
    assert piv == [0, 1]
    assert rank(M([[1, 2, 3], [2, 4, 6], [0, 1, 1]]), QQ) == 2


def test_nullspace_is_annihilated():
    A = M([[1, 2, 3], [0, 1, 1]])
    for v in nullspace(A, QQ):
        assert all(sum(a * x for a, x in zip(row, v)) == 0 for row in A)


def test_left_kernel():
    A = M([[1, 2], [2, 4], [0, 1]])
    K = left_kernel(A, QQ, 3, 2)
    assert len(K) == 1
    assert matmul(K, A, QQ) == [[0, 0]]


def test_coordinates_and_not_in_span():
    B = M([[1, 0, 1], [0, 1, 1]])
    assert coordinates(B, M([[2, 3, 5]]), QQ) == [[2, 3]]
    try:
        coordinates(B, M([[1, 0, 0]]), QQ)
    except NotInSpan:
        pass
    else:
        raise AssertionError("expected NotInSpan")


def test_is_invertible_mod_p():
    F = Field(2)
    assert not is_invertible(M([[1, 1], [1, 1]], F), F)
    assert is_invertible(M([[1, 1], [0, 1]], F), F)


def test_sparse_echelon_membership():
    E = SparseEchelon(QQ, lambda k: k)
    assert E.add({0: QQ(1), 1: QQ(1)})
    assert not E.add({0: QQ(2), 1: QQ(2)})
    assert E.contains({0: QQ(-1), 1: QQ(-1)})
    assert not E.contains({1: QQ(1)})


matrices = st.lists(st.lists(st.integers(-3, 3), min_size=4, max_size=4), min_size=1, max_size=5)


@settings(max_examples=60)
@given(matrices, st.sampled_from([None, 2, 3, 7]))
def test_sparse_nullspace_matches_dense(rows, p):
    F = QQ if p is None else Field(p)
    A = M(rows, F)
    sparse = [{j: x for j, x in enumerate(r) if x != 0} for r in A]
    K = sparse_nullspace(sparse, 4, F)
    assert len(K) == 4 - rank(A, F)
    for v in K:
        for r in A:
            acc = F.zero
            for a, x in zip(r, v):
                acc = F.add(acc, F.mul(a, x))
            assert acc == F.zero


def test_rank_nullity_random():
    rng = random.Random(3)
    for _ in range(20):
        A = [[QQ(rng.randint(-2, 2)) for _ in range(5)] for _ in range(4)]
        assert rank(A, QQ) + len(nullspace(A, QQ, 5)) == 5
