import itertools
from fractions import Fraction

import pytest

from nnspectra.errors import BudgetExceeded, PreconditionError
from nnspectra.matching import is_induced_matching
from nnspectra.matrix import NonnegativeMatrix, kron_power
from nnspectra.sampling import random_triangular
from nnspectra.triangular import (balanced_strings, block_matching, diagonal_support,
                                  is_triangular, multinomial, triangular_certificate)


def test_two_by_two():
    A = NonnegativeMatrix([[1, 1], [0, 1]])
    cert = triangular_certificate(A, 2)
    assert cert.strings == ((0, 1), (1, 0))
    assert cert.count == 2 and cert.lower_bound_holds()


def test_three_by_three():
    A = NonnegativeMatrix([[1, 2, 3], [0, 1, 1], [0, 0, 5]])
    cert = triangular_certificate(A, 3)
    assert cert.count == 6
    assert cert.lower_bound_holds()


def test_gap_in_diagonal():
    A = NonnegativeMatrix([[1, 1, 1], [0, 0, 1], [0, 0, 1]])
    assert diagonal_support(A) == (0, 2)
    cert = triangular_certificate(A, 2)
    assert cert.strings == ((0, 2), (2, 0))


def test_against_materialized_power(rng):
    for _ in range(15):
        m, n = rng.randint(1, 3), rng.randint(1, 4)
        A = random_triangular(rng, m, n)
        d = len(diagonal_support(A))
        N = d * (1 if d > 2 else 2)
        cert = triangular_certificate(A, N)
        P = kron_power(A, N)
        block = P.submatrix(cert.row_indices, cert.col_indices)
        for a, b in itertools.product(range(cert.count), repeat=2):
            assert (block[a, b] > 0) == (a == b)
        assert is_induced_matching(P, block_matching(cert))


def test_count_formula():
    assert len(list(balanced_strings((0, 1, 2, 3), 2))) == multinomial(8, [2] * 4) == 2520
    assert multinomial(6, [2, 2, 2]) == 90


def test_bound_is_checked_exactly():
    A = NonnegativeMatrix.identity(3)
    cert = triangular_certificate(A, 6)
    assert Fraction(cert.count) >= Fraction(3 ** 6, 7 ** 3)


def test_preconditions():
    with pytest.raises(PreconditionError):
        triangular_certificate(NonnegativeMatrix([[1, 0], [1, 1]]), 2)
    with pytest.raises(PreconditionError):
        triangular_certificate(NonnegativeMatrix([[0, 1], [0, 0]]), 2)
    with pytest.raises(PreconditionError):
        triangular_certificate(NonnegativeMatrix.identity(2), 3)
    with pytest.raises(BudgetExceeded):
        triangular_certificate(NonnegativeMatrix.identity(4), 8, max_strings=100)


def test_is_triangular():
    assert is_triangular(NonnegativeMatrix([[1, 2, 3], [0, 4, 5]]))
    assert not is_triangular(NonnegativeMatrix([[1, 2], [3, 4]]))
    assert is_triangular(NonnegativeMatrix([[1], [0], [0]]))
