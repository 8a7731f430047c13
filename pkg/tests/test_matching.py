import pytest

from nnspectra.cover import fractional_cover
from nnspectra.errors import BudgetExceeded
from nnspectra.linalg import rank
from nnspectra.matching import is_induced_matching, subrank, subrank_bruteforce
from nnspectra.matrix import NonnegativeMatrix, direct_sum, kronecker, support
from nnspectra.sampling import random_matrix, random_rational, random_shape

from conftest import A_EX, one_based

I = NonnegativeMatrix.identity


def check_certificate(A, res):
    X, Y = res.certificate_left, res.certificate_right
    assert X.shape == (res.size, A.rows) and Y.shape == (res.size, A.cols)
    assert X @ A @ Y.T == I(res.size)


class TestIsInducedMatching:
    def test_example_accepts(self):
        assert is_induced_matching(A_EX, one_based([(4, 1), (3, 2)]))

    def test_example_rejects(self):
        assert not is_induced_matching(A_EX, one_based([(1, 1), (2, 3), (3, 2), (4, 4)]))

    def test_empty(self):
        assert is_induced_matching(A_EX, [])

    def test_out_of_range(self):
        with pytest.raises(IndexError):
            is_induced_matching(A_EX, [(4, 0)])

    def test_off_support(self):
        assert not is_induced_matching(A_EX, [(0, 2)])

    def test_shared_row(self):
        assert not is_induced_matching(I(2), [(0, 0), (0, 0)])


class TestSubrank:
    def test_example(self):
        res = subrank(A_EX)
        assert res.size == 2 and res.exact
        assert is_induced_matching(A_EX, res.matching)
        check_certificate(A_EX, res)

    @pytest.mark.parametrize("n", range(1, 7))
    def test_identity(self, n):
        res = subrank(I(n))
        assert res.size == n
        assert res.matching == tuple((i, i) for i in range(n))

    def test_zero(self):
        res = subrank(NonnegativeMatrix.zeros(2, 3))
        assert res.size == 0 and res.matching == ()
        assert res.certificate_left.shape == (0, 2)

    def test_budget_flag(self):
        A = NonnegativeMatrix([[1 if (i + j) % 3 else 0 for j in range(9)] for i in range(9)])
        res = subrank(A, node_budget=1)
        assert not res.exact
        assert is_induced_matching(A, res.matching)
        check_certificate(A, res)

    def test_against_bruteforce(self, rng):
        checked = 0
        while checked < 80:
            A = random_matrix(rng, *random_shape(rng, 5), density=0.5)
            if len(support(A)) > 18:
                continue
            res = subrank(A)
            assert res.size == subrank_bruteforce(A)
            check_certificate(A, res)
            checked += 1

    def test_support_only(self, rng):
        for _ in range(30):
            A = random_matrix(rng, *random_shape(rng, 4))
            B = NonnegativeMatrix([[random_rational(rng, 50, 7) if x else 0 for x in row]
                                   for row in A.entries])
            assert subrank(A).size == subrank(B).size

    def test_additive(self, rng):
        for _ in range(30):
            A = random_matrix(rng, *random_shape(rng, 4))
            B = random_matrix(rng, *random_shape(rng, 4))
            assert subrank(direct_sum(A, B)).size == subrank(A).size + subrank(B).size

    def test_supermultiplicative(self, rng):
        for _ in range(20):
            A = random_matrix(rng, *random_shape(rng, 3))
            B = random_matrix(rng, *random_shape(rng, 3))
            assert subrank(kronecker(A, B)).size >= subrank(A).size * subrank(B).size

    def test_monotone_under_products(self, rng):
        for _ in range(30):
            m, k, n = (rng.randint(1, 4) for _ in range(3))
            B = random_matrix(rng, m, k)
            C = random_matrix(rng, k, n)
            assert subrank(B @ C).size <= min(subrank(B).size, subrank(C).size)

    def test_below_rank_and_cover(self, rng):
        for _ in range(30):
            A = random_matrix(rng, *random_shape(rng, 4))
            g = subrank(A).size
            assert g <= rank(A).rank
            assert g <= fractional_cover(A).value


class TestBruteforce:
    def test_example(self):
        assert subrank_bruteforce(A_EX) == 2

    def test_identity(self):
        assert subrank_bruteforce(I(4)) == 4

    def test_all_ones(self):
        assert subrank_bruteforce(NonnegativeMatrix([[1] * 3] * 3)) == 1

    def test_budget(self):
        with pytest.raises(BudgetExceeded):
            subrank_bruteforce(NonnegativeMatrix([[1] * 5] * 5))
