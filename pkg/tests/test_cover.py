import itertools
from fractions import Fraction

import numpy as np
import pytest
from scipy.optimize import Bounds, LinearConstraint, linprog, milp

from nnspectra.cover import (Rectangle, enumerate_maximal_rectangles,
                             fractional_cover, fstar_estimate, tfold_cover)
from nnspectra.errors import BudgetExceeded, DomainError
from nnspectra.linalg import rank
from nnspectra.matrix import NonnegativeMatrix, direct_sum, kronecker, support
from nnspectra.sampling import random_matrix, random_rational, random_shape
from nnspectra.witnesses import sample_witness

from conftest import A_RM, B_RM

I = NonnegativeMatrix.identity


def brute_rectangles(S):
    """Every monochromatic rectangle by exhaustion, independent of the package."""
    out = []
    for r in range(1, S.rows + 1):
        for X in itertools.combinations(range(S.rows), r):
            for c in range(1, S.cols + 1):
                for Y in itertools.combinations(range(S.cols), c):
                    if all((i, j) in S.cells for i in X for j in Y):
                        out.append((X, Y))
    return out


def brute_maximal(S):
    R = brute_rectangles(S)
    return sorted(r for r in R
                  if not any(q != r and set(r[0]) <= set(q[0]) and set(r[1]) <= set(q[1])
                             for q in R))


def highs_cover(S, t=None):
    R = brute_rectangles(S)
    cells = sorted(S.cells)
    M = np.array([[1.0 if (i in X and j in Y) else 0.0 for (X, Y) in R] for (i, j) in cells])
    if t is None:
        return linprog(np.ones(len(R)), A_ub=-M, b_ub=-np.ones(len(cells)),
                       bounds=(0, 1), method="highs").fun
    res = milp(np.ones(len(R)), constraints=LinearConstraint(M, lb=t),
               integrality=np.ones(len(R)), bounds=Bounds(0, np.inf))
    return round(res.fun)


class TestEnumeration:
    def test_identity(self):
        got = enumerate_maximal_rectangles(support(I(3)))
        assert got == [Rectangle((i,), (i,)) for i in range(3)]

    def test_all_ones(self):
        got = enumerate_maximal_rectangles(support(NonnegativeMatrix([[1, 1], [1, 1]])))
        assert got == [Rectangle((0, 1), (0, 1))]

    def test_a_rm(self):
        got = enumerate_maximal_rectangles(support(A_RM))
        assert len(got) == 8
        assert all(R.size() == 2 for R in got)

    def test_against_bruteforce(self, rng):
        for _ in range(80):
            S = support(random_matrix(rng, *random_shape(rng, 4), density=0.6))
            if not S.cells:
                continue
            got = [(R.row_set, R.col_set) for R in enumerate_maximal_rectangles(S)]
            assert got == brute_maximal(S)

    def test_budget(self):
        # complement of a perfect matching has 2^n - 2 maximal rectangles
        n = 8
        S = support(NonnegativeMatrix([[0 if i == j else 1 for j in range(n)] for i in range(n)]))
        with pytest.raises(BudgetExceeded):
            enumerate_maximal_rectangles(S, max_count=100)
        assert len(enumerate_maximal_rectangles(S)) == 2 ** n - 2

    def test_empty_rectangle_rejected(self):
        with pytest.raises(DomainError):
            Rectangle((), (0,))


class TestFractionalCover:
    def test_a_rm(self):
        assert fractional_cover(A_RM).value == 4

    def test_b_rm(self):
        assert fractional_cover(B_RM).value == Fraction(7, 2)

    @pytest.mark.parametrize("n", range(1, 7))
    def test_identity(self, n):
        assert fractional_cover(I(n)).value == n

    def test_zero(self):
        sol = fractional_cover(NonnegativeMatrix.zeros(2, 2))
        assert sol.value == 0 and not sol.primal and not sol.dual

    def test_certificates(self, rng):
        for _ in range(40):
            A = random_matrix(rng, *random_shape(rng, 5))
            S = support(A)
            sol = fractional_cover(A)
            if not S.cells:
                continue
            assert sum(sol.primal.values()) == sol.value == sum(sol.dual.values())
            for c in S.cells:
                assert sum(w for R, w in sol.primal.items() if c in R) >= 1
            for X, Y in brute_rectangles(S):
                assert sum(sol.dual.get((i, j), 0) for i in X for j in Y) <= 1

    def test_against_highs(self, rng):
        for _ in range(40):
            S = support(random_matrix(rng, *random_shape(rng, 4)))
            if not S.cells:
                continue
            assert abs(float(fractional_cover(S.to_matrix()).value) - highs_cover(S)) < 1e-9

    def test_maximal_reduction(self, rng):
        for _ in range(40):
            A = random_matrix(rng, *random_shape(rng, 3))
            assert fractional_cover(A).value == fractional_cover(A, rectangles="all").value

    def test_bad_rectangle_mode(self):
        with pytest.raises(ValueError):
            fractional_cover(I(2), rectangles="some")

    def test_support_only(self, rng):
        for _ in range(20):
            A = random_matrix(rng, *random_shape(rng, 4))
            B = NonnegativeMatrix([[random_rational(rng, 40, 9) if x else 0 for x in row]
                                   for row in A.entries])
            assert fractional_cover(A).value == fractional_cover(B).value

    def test_multiplicative_additive(self, rng):
        for _ in range(25):
            A = random_matrix(rng, *random_shape(rng, 3))
            B = random_matrix(rng, *random_shape(rng, 3))
            fa, fb = fractional_cover(A).value, fractional_cover(B).value
            assert fractional_cover(kronecker(A, B)).value == fa * fb
            assert fractional_cover(direct_sum(A, B)).value == fa + fb

    def test_monotone(self, rng):
        for _ in range(25):
            m, k, n = (rng.randint(1, 4) for _ in range(3))
            B = random_matrix(rng, m, k)
            C = random_matrix(rng, k, n)
            fbc = fractional_cover(B @ C).value
            assert fbc <= min(fractional_cover(B).value, fractional_cover(C).value)
            w = sample_witness(rng, B, rng.randint(1, 4), rng.randint(1, 4))
            assert fractional_cover(w.lhs).value <= fractional_cover(B).value

    def test_support_algebra(self, rng):
        for _ in range(30):
            m, k, n = (rng.randint(1, 4) for _ in range(3))
            M = random_matrix(rng, m, k)
            N = random_matrix(rng, k, n)
            lhs = support(M @ N)
            rhs = support(support(M).to_matrix() @ support(N).to_matrix())
            assert lhs == rhs

    def test_incomparable_with_rank(self):
        assert fractional_cover(A_RM).value > rank(A_RM).rank
        assert fractional_cover(B_RM).value < rank(B_RM).rank

    def test_to_json(self):
        js = fractional_cover(B_RM).to_json()
        assert js["value"] == "7/2"
        assert all(set(p) == {"rows", "cols", "weight"} for p in js["primal"])


class TestTfold:
    def test_identity(self):
        assert tfold_cover(I(2), 1).value == 2

    def test_a_rm(self):
        sol = tfold_cover(A_RM, 1)
        assert sol.value == 4
        assert tfold_cover(A_RM, 2).value == 8

    def test_b_rm_two_fold(self):
        assert tfold_cover(B_RM, 1).value == 4
        assert tfold_cover(B_RM, 2).value == 7

    def test_multiset_is_cover(self, rng):
        for _ in range(20):
            A = random_matrix(rng, *random_shape(rng, 4))
            S = support(A)
            t = rng.randint(1, 3)
            sol = tfold_cover(A, t)
            assert sum(sol.primal.values()) == sol.value
            for c in S.cells:
                assert sum(w for R, w in sol.primal.items() if c in R) >= t
            for R in sol.primal:
                assert R.is_monochromatic(S)

    def test_against_milp(self, rng):
        for _ in range(25):
            S = support(random_matrix(rng, *random_shape(rng, 4)))
            if not S.cells:
                continue
            t = rng.randint(1, 3)
            assert tfold_cover(S.to_matrix(), t).value == highs_cover(S, t)

    def test_subadditive(self, rng):
        for _ in range(15):
            A = random_matrix(rng, *random_shape(rng, 4))
            F = {t: tfold_cover(A, t).value for t in (1, 2, 3, 4)}
            for s, t in itertools.product((1, 2), repeat=2):
                assert F[s + t] <= F[s] + F[t]
            frac = fractional_cover(A).value
            assert all(F[t] / t >= frac for t in F)
            assert frac <= F[1] <= len(support(A))

    def test_zero_and_bad_t(self):
        assert tfold_cover(NonnegativeMatrix.zeros(2, 2), 3).value == 0
        with pytest.raises(DomainError):
            tfold_cover(I(2), 0)

    def test_budget(self):
        A = NonnegativeMatrix([[0 if i == j else 1 for j in range(6)] for i in range(6)])
        with pytest.raises(BudgetExceeded) as info:
            tfold_cover(A, 3, node_budget=1)
        assert info.value.partial is not None


class TestFstar:
    def test_identity(self):
        est = fstar_estimate(I(3), 3)
        assert [v for _, v in est.terms] == [3, 3, 3]
        assert est.closed()

    def test_a_rm_closes_at_one(self):
        est = fstar_estimate(A_RM, 1)
        assert est.terms == ((1, 4),) and est.floor == 4

    def test_b_rm_closes_at_two(self):
        est = fstar_estimate(B_RM, 2)
        assert est.terms[0] == (1, 4)
        assert est.terms[1] == (2, Fraction(7, 2)) == (2, est.floor)

    def test_bad_tmax(self):
        with pytest.raises(DomainError):
            fstar_estimate(I(2), 0)
