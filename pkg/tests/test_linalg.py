import itertools
import random

import pytest
import sympy

from nnspectra.linalg import determinant, rank
from nnspectra.matrix import NonnegativeMatrix, direct_sum, kronecker
from nnspectra.sampling import random_matrix, random_shape
from nnspectra.witnesses import sample_witness

from conftest import A_RM, B_RM


def sympy_rank(A):
    return sympy.Matrix(A.to_lists()).rank()


def test_incomparability_pair():
    assert rank(A_RM).rank == 3
    assert rank(B_RM).rank == 4


@pytest.mark.parametrize("n", range(1, 7))
def test_identity(n):
    assert rank(NonnegativeMatrix.identity(n)).rank == n


def test_zero_and_empty():
    assert rank(NonnegativeMatrix.zeros(3, 2)).rank == 0
    assert rank(NonnegativeMatrix.empty()).rank == 0


def test_matches_sympy(rng):
    for _ in range(60):
        A = random_matrix(rng, *random_shape(rng, 5), density=0.5)
        assert rank(A).rank == sympy_rank(A)


def test_pivot_minor_invertible(rng):
    for _ in range(60):
        A = random_matrix(rng, *random_shape(rng, 5))
        r = rank(A)
        assert len(r.pivot_rows) == len(r.pivot_cols) == r.rank <= min(A.shape)
        minor = A.submatrix(r.pivot_rows, r.pivot_cols)
        assert determinant(minor.entries) != 0


def test_bruteforce_minor_definition():
    # largest invertible square submatrix, by exhaustion
    rng = random.Random(3)
    for _ in range(20):
        A = random_matrix(rng, 3, 4, density=0.5)
        best = 0
        for k in range(1, 4):
            for rows in itertools.combinations(range(3), k):
                for cols in itertools.combinations(range(4), k):
                    if determinant(A.submatrix(rows, cols).entries) != 0:
                        best = k
        assert rank(A).rank == best


def test_deterministic_pivots():
    A = NonnegativeMatrix([[0, 1], [1, 1], [1, 0]])
    r = rank(A)
    assert r.pivot_cols == (0, 1)
    assert r.pivot_rows == (1, 0)


def test_kronecker_and_direct_sum_laws(rng):
    for _ in range(30):
        A = random_matrix(rng, *random_shape(rng, 3))
        B = random_matrix(rng, *random_shape(rng, 3))
        ra, rb = rank(A).rank, rank(B).rank
        assert rank(kronecker(A, B)).rank == ra * rb
        assert rank(direct_sum(A, B)).rank == ra + rb


def test_monotone_under_restriction(rng):
    for _ in range(30):
        B = random_matrix(rng, *random_shape(rng, 4))
        w = sample_witness(rng, B, *random_shape(rng, 4))
        assert rank(w.lhs).rank <= rank(B).rank


def test_large_entries_exact():
    big = 10**40
    A = NonnegativeMatrix([[big, big + 1], [big - 1, big]])
    # det = big^2 - (big^2 - 1) = 1
    assert rank(A).rank == 2
    assert rank(NonnegativeMatrix([[big, 2 * big], [1, 2]])).rank == 1
