"""Exact rank by fraction-free (Bareiss) elimination."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .matrix import NonnegativeMatrix


@dataclass(frozen=True)
class RankResult:
    rank: int
    pivot_rows: tuple[int, ...]
    pivot_cols: tuple[int, ...]

    def __int__(self) -> int:
        return self.rank


def _integer_rows(rows: Sequence[Sequence[Fraction]]) -> list[list[int]]:
    # Scaling a row by a positive constant changes neither rank nor pivots.
    out = []
    for r in rows:
        den = 1
        for x in r:
            den = den * x.denominator // math.gcd(den, x.denominator)
        out.append([int(x * den) for x in r])
    return out


def rank(A: NonnegativeMatrix) -> RankResult:
    """Exact rank of ``A`` with the pivot rows/columns that certify it.

    Pivots are chosen column by column, taking the first remaining row with
    a nonzero entry, so the result is deterministic.
    """
    m, n = A.shape
    M = _integer_rows(A.entries)
    order = list(range(m))
    pivot_rows: list[int] = []
    pivot_cols: list[int] = []
    k = 0
    prev = 1
    for c in range(n):
        if k == m:
            break
        p = next((i for i in range(k, m) if M[i][c] != 0), None)
        if p is None:
            continue
        if p != k:
            M[k], M[p] = M[p], M[k]
            order[k], order[p] = order[p], order[k]
        piv = M[k][c]
        rk = M[k]
        for i in range(k + 1, m):
            ri = M[i]
            f = ri[c]
            for j in range(c + 1, n):
                ri[j] = (piv * ri[j] - f * rk[j]) // prev
            ri[c] = 0
        prev = piv
        pivot_rows.append(order[k])
        pivot_cols.append(c)
        k += 1
    return RankResult(k, tuple(pivot_rows), tuple(pivot_cols))


def determinant(rows: Sequence[Sequence[Fraction]]) -> Fraction:
    """Exact determinant of a square rational matrix (given as rows)."""
    M = [[Fraction(x) for x in r] for r in rows]
    n = len(M)
    det = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if M[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            M[c], M[p] = M[p], M[c]
            det = -det
        det *= M[c][c]
        for i in range(c + 1, n):
            f = M[i][c] / M[c][c]
            if f:
                for j in range(c, n):
                    M[i][j] -= f * M[c][j]
    return det
