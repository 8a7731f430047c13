import random
from fractions import Fraction

import numpy as np
import pytest
from scipy.optimize import linprog

from nnspectra.errors import InfeasibleLP, UnboundedLP
from nnspectra.lp import solve_lp_exact


def test_min_x_at_least_one():
    res = solve_lp_exact([[1]], [1], [1], maximize=False, senses=[">="])
    assert res.value == 1 and res.x == (1,)


def test_cover_identity_two():
    res = solve_lp_exact([[1, 0], [0, 1]], [1, 1], [1, 1], maximize=False,
                         senses=[">=", ">="])
    assert res.value == 2 and res.x == (1, 1)


def test_textbook_duals():
    res = solve_lp_exact([[1, 0], [0, 2], [3, 2]], [4, 12, 18], [3, 5])
    assert res.value == 36
    assert res.x == (2, 6)
    assert res.duals == (0, Fraction(3, 2), 1)


def test_beale_cycling_example_terminates():
    # Classic instance on which the largest-coefficient rule cycles.
    A = [[Fraction(1, 4), -8, -1, 9], [Fraction(1, 2), -12, Fraction(-1, 2), 3], [0, 0, 1, 0]]
    res = solve_lp_exact(A, [0, 0, 1], [Fraction(3, 4), -20, Fraction(1, 2), -6])
    assert res.value == Fraction(5, 4)


def test_redundant_constraints():
    A = [[1, 1], [1, 1], [2, 2], [1, 0]]
    res = solve_lp_exact(A, [1, 1, 2, 1], [1, 1])
    assert res.value == 1


def test_redundant_equalities_phase_one():
    # x + y >= 1 listed twice alongside x + y <= 1: artificial stays basic at zero
    A = [[1, 1], [1, 1], [1, 1]]
    res = solve_lp_exact(A, [1, 1, 1], [1, 2], maximize=False, senses=[">=", ">=", "<="])
    assert res.value == 1


def test_infeasible():
    with pytest.raises(InfeasibleLP):
        solve_lp_exact([[1], [1]], [1, 2], [1], senses=["<=", ">="])


def test_unbounded():
    with pytest.raises(UnboundedLP):
        solve_lp_exact([[1, -1]], [1], [1, 1])


def test_random_against_highs():
    rng = random.Random(11)
    solved = 0
    for _ in range(60):
        m, n = rng.randint(1, 5), rng.randint(1, 5)
        A = [[Fraction(rng.randint(-3, 5), rng.randint(1, 3)) for _ in range(n)] for _ in range(m)]
        b = [Fraction(rng.randint(-2, 6)) for _ in range(m)]
        c = [Fraction(rng.randint(-3, 4)) for _ in range(n)]
        ref = linprog(-np.array(c, float), A_ub=np.array(A, float), b_ub=np.array(b, float),
                      bounds=(0, None), method="highs")
        if ref.status == 2:
            with pytest.raises(InfeasibleLP):
                solve_lp_exact(A, b, c)
            continue
        if ref.status == 3:
            with pytest.raises(UnboundedLP):
                solve_lp_exact(A, b, c)
            continue
        res = solve_lp_exact(A, b, c)
        assert abs(float(res.value) + ref.fun) < 1e-7
        # exact primal feasibility, dual feasibility, strong duality
        for row, bi in zip(A, b):
            assert sum(a * x for a, x in zip(row, res.x)) <= bi
        assert all(x >= 0 for x in res.x) and all(y >= 0 for y in res.duals)
        for j in range(n):
            assert sum(A[i][j] * res.duals[i] for i in range(m)) >= c[j]
        assert sum(bi * y for bi, y in zip(b, res.duals)) == res.value
        solved += 1
    assert solved > 10
