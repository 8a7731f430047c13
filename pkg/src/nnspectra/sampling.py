"""Seeded random instances for the law harnesses and the test suite."""

from __future__ import annotations

import random
from fractions import Fraction

from .matrix import NonnegativeMatrix


def random_rational(rng: random.Random, max_num: int = 5, max_den: int = 3) -> Fraction:
    """Positive rational p/q with 1 <= p <= max_num, 1 <= q <= max_den."""
    return Fraction(rng.randint(1, max_num), rng.randint(1, max_den))


def random_matrix(rng: random.Random, m: int, n: int, density: float = 0.6,
                  max_num: int = 5, max_den: int = 3, binary: bool = False
                  ) -> NonnegativeMatrix:
    rows = []
    for _ in range(m):
        row = []
        for _ in range(n):
            if rng.random() < density:
                row.append(Fraction(1) if binary else random_rational(rng, max_num, max_den))
            else:
                row.append(Fraction(0))
        rows.append(row)
    return NonnegativeMatrix(rows, m, n)


def random_shape(rng: random.Random, max_dim: int) -> tuple[int, int]:
    return rng.randint(1, max_dim), rng.randint(1, max_dim)


def random_permutation(rng: random.Random, n: int) -> list[int]:
    p = list(range(n))
    rng.shuffle(p)
    return p


def random_scales(rng: random.Random, n: int) -> list[Fraction]:
    return [random_rational(rng, 7, 5) for _ in range(n)]


def random_triangular(rng: random.Random, m: int, n: int, density: float = 0.6
                      ) -> NonnegativeMatrix:
    """Random m x n matrix with A[i, j] == 0 for i > j and a positive diagonal."""
    rows = []
    for i in range(m):
        row = []
        for j in range(n):
            if i == j:
                row.append(random_rational(rng))
            elif i < j and rng.random() < density:
                row.append(random_rational(rng))
            else:
                row.append(Fraction(0))
        rows.append(row)
    return NonnegativeMatrix(rows, m, n)
