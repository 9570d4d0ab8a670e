import random
from fractions import Fraction

import pytest

from nilalg.errors import SingularMatrixError
from nilalg.linalg import Subspace, det, identity, inverse, matmul, nullspace, rank, rref, solve, transpose
from nilalg.scalars import I, var


def _rand_matrix(rng, n, m=None):
    m = m or n
    return [[Fraction(rng.randint(-3, 3)) for _ in range(m)] for _ in range(n)]


def test_rref_pivots_and_rank():
    rows = [[1, 2, 3], [2, 4, 6], [0, 1, 1]]
    basis, pivots = rref(rows, 3)
    assert pivots == [0, 1]
    assert rank(rows, 3) == 2
    assert basis == [[1, 0, 1], [0, 1, 1]]


def test_nullspace_is_annihilated():
    rng = random.Random(3)
    for _ in range(50):
        M = _rand_matrix(rng, 3, 5)
        for v in nullspace(M, 5):
            assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in M)
        assert len(nullspace(M, 5)) == 5 - rank(M, 5)


def test_det_inverse_solve():
    rng = random.Random(5)
    for _ in range(50):
        M = _rand_matrix(rng, 4)
        d = det(M)
        if d == 0:
            with pytest.raises(SingularMatrixError):
                inverse(M)
            continue
        assert matmul(M, inverse(M)) == identity(4)
        b = [Fraction(rng.randint(-5, 5)) for _ in range(4)]
        x = solve(M, b)
        assert [sum(a * y for a, y in zip(row, x)) for row in M] == b


def test_det_symbolic():
    t = var("t")
    M = [[t, 1], [0, t * I]]
    assert det(M) == I * t * t
    assert det(transpose(M)) == det(M)


def test_subspace_operations():
    U = Subspace([[1, 0, 0], [0, 1, 0]], 3)
    W = Subspace([[0, 1, 0], [0, 0, 1]], 3)
    assert (U + W) == Subspace.full(3)
    assert U.intersection(W) == Subspace([[0, 1, 0]], 3)
    assert U.contains([3, -2, 0])
    assert not U.contains([0, 0, 1])
    assert U.complement_coordinates() == [2]
    assert Subspace.zero(3).dim == 0
