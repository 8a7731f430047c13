"""Diagonal blocks inside Kronecker powers of triangular matrices.

Call A (m x n) triangular when A[i, j] == 0 for all i > j, and let V be the
set of positions p < min(m, n) with A[p, p] > 0, d = |V|. For N a multiple
of d, the index strings of length N that use every p in V exactly N/d times
select a principal submatrix of A^(xN) that is diagonal with a positive
diagonal: two different such strings have equal digit sums, so some position
has a row digit larger than the column digit, where A vanishes. Its size is
the multinomial N! / ((N/d)!)^d >= d^N / (N+1)^d, which pushes the
asymptotic subrank up to d.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

import numpy as np

from .errors import BudgetExceeded, PreconditionError
from .matrix import NonnegativeMatrix

DEFAULT_MAX_STRINGS = 200_000


@dataclass(frozen=True)
class TriangularCertificate:
    """``strings`` are digit tuples, most significant (first Kronecker factor)
    first; ``row_indices`` / ``col_indices`` locate them in A^(xN)."""

    V: tuple[int, ...]
    d: int
    N: int
    strings: tuple[tuple[int, ...], ...]
    row_indices: tuple[int, ...]
    col_indices: tuple[int, ...]
    count: int

    def lower_bound_holds(self) -> bool:
        return Fraction(self.count) >= Fraction(self.d ** self.N, (self.N + 1) ** self.d)

    def to_json(self) -> dict:
        return {"V": list(self.V), "d": self.d, "N": self.N, "count": self.count,
                "bound": f"{self.d}^{self.N}/({self.N}+1)^{self.d}",
                "bound_holds": self.lower_bound_holds()}


def is_triangular(A: NonnegativeMatrix) -> bool:
    return all(A[i, j] == 0 for i in range(A.rows) for j in range(min(i, A.cols)))


def diagonal_support(A: NonnegativeMatrix) -> tuple[int, ...]:
    return tuple(p for p in range(min(A.rows, A.cols)) if A[p, p] > 0)


def multinomial(N: int, parts: list[int]) -> int:
    out = math.factorial(N)
    for k in parts:
        out //= math.factorial(k)
    return out


def balanced_strings(V: tuple[int, ...], reps: int) -> Iterator[tuple[int, ...]]:
    """All strings using each symbol of V exactly ``reps`` times, in lex order."""
    left = {v: reps for v in V}
    total = reps * len(V)
    buf: list[int] = []

    def rec():
        if len(buf) == total:
            yield tuple(buf)
            return
        for v in V:
            if left[v]:
                left[v] -= 1
                buf.append(v)
                yield from rec()
                buf.pop()
                left[v] += 1

    yield from rec()


def _index(digits: tuple[int, ...], base: int) -> int:
    out = 0
    for x in digits:
        out = out * base + x
    return out


def triangular_certificate(A: NonnegativeMatrix, N: int,
                           max_strings: int = DEFAULT_MAX_STRINGS) -> TriangularCertificate:
    """Build and check the diagonal block of A^(xN) on balanced digit strings.

    The check uses A^(xN)[s, t] = prod_k A[s_k, t_k] on the zero pattern of A,
    so A^(xN) itself is never formed.
    """
    if not is_triangular(A):
        raise PreconditionError("matrix is not triangular (needs A[i, j] == 0 for i > j)")
    V = diagonal_support(A)
    d = len(V)
    if d == 0:
        raise PreconditionError("no positive diagonal entry")
    if N < 1 or N % d:
        raise PreconditionError(f"N = {N} is not a positive multiple of d = {d}")
    reps = N // d
    count = multinomial(N, [reps] * d)
    if count > max_strings:
        raise BudgetExceeded(f"{count} strings exceed the limit {max_strings}")
    strings = tuple(balanced_strings(V, reps))
    if len(strings) != count:
        raise AssertionError("string enumeration disagrees with the multinomial count")

    zero = np.array([[A[i, j] == 0 for j in range(A.cols)] for i in range(A.rows)])
    S = np.array(strings, dtype=np.intp)
    vanishes = np.zeros((count, count), dtype=bool)
    for k in range(N):
        col = S[:, k]
        vanishes |= zero[col[:, None], col[None, :]]
    off_diag = ~np.eye(count, dtype=bool)
    if not vanishes[off_diag].all():
        raise AssertionError("balanced block of the Kronecker power is not diagonal")
    if vanishes.diagonal().any():
        raise AssertionError("balanced block has a zero on its diagonal")

    return TriangularCertificate(
        V, d, N, strings,
        tuple(_index(s, A.rows) for s in strings),
        tuple(_index(s, A.cols) for s in strings),
        count)


def block_matching(cert: TriangularCertificate) -> list[tuple[int, int]]:
    """The certified diagonal cells of A^(xN) as an induced matching."""
    return list(zip(cert.row_indices, cert.col_indices))
