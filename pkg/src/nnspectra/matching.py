"""Nonnegative subrank as the maximum induced matching of the support.

A set of support cells is an induced matching when every two of its cells
(a, b), (c, d) satisfy A[a, d] == A[c, b] == 0. The largest such set has the
same size as the largest identity I_t with I_t = X A Y^T for nonnegative X, Y,
and :func:`subrank` returns both the matching and the pair (X, Y).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import BudgetExceeded
from .matrix import NonnegativeMatrix

DEFAULT_NODE_BUDGET = 200_000
BRUTEFORCE_SUPPORT_LIMIT = 22


@dataclass(frozen=True)
class MatchingResult:
    """An induced matching with its subrank certificate.

    ``exact`` is False when the node budget ran out; ``size`` is then only a
    lower bound on the maximum.
    """

    size: int
    matching: tuple[tuple[int, int], ...]
    certificate_left: NonnegativeMatrix
    certificate_right: NonnegativeMatrix
    exact: bool = True
    nodes: int = 0


def is_induced_matching(A: NonnegativeMatrix, phi: Iterable[Sequence[int]]) -> bool:
    pairs = [tuple(p) for p in phi]
    for a, b in pairs:
        if not (0 <= a < A.rows and 0 <= b < A.cols):
            raise IndexError(f"cell {(a, b)} outside {A.rows}x{A.cols} matrix")
    if len(set(pairs)) != len(pairs):
        return False
    if any(A[a, b] <= 0 for a, b in pairs):
        return False
    if len({a for a, _ in pairs}) != len(pairs) or len({b for _, b in pairs}) != len(pairs):
        return False
    for (a, b), (c, d) in itertools.combinations(pairs, 2):
        if A[a, d] != 0 or A[c, b] != 0:
            return False
    return True


def matching_certificate(A: NonnegativeMatrix,
                         matching: Sequence[tuple[int, int]]
                         ) -> tuple[NonnegativeMatrix, NonnegativeMatrix]:
    """Nonnegative (X, Y) with X A Y^T = I_t for an induced matching of size t.

    Row k of X picks row a_k scaled by 1/A[a_k, b_k]; row k of Y picks column
    b_k. Scaling on one side only keeps everything rational.
    """
    t = len(matching)
    zero = Fraction(0)
    X = [[zero] * A.rows for _ in range(t)]
    Y = [[zero] * A.cols for _ in range(t)]
    for k, (a, b) in enumerate(matching):
        X[k][a] = 1 / A[a, b]
        Y[k][b] = Fraction(1)
    return (NonnegativeMatrix(X, t, A.rows), NonnegativeMatrix(Y, t, A.cols))


def _conflict_graph(A: NonnegativeMatrix, cells: list[tuple[int, int]]) -> list[int]:
    n = len(cells)
    conf = [1 << v for v in range(n)]
    for u in range(n):
        a, b = cells[u]
        for v in range(u + 1, n):
            c, d = cells[v]
            if a == c or b == d or A[a, d] > 0 or A[c, b] > 0:
                conf[u] |= 1 << v
                conf[v] |= 1 << u
    return conf


def _build_result(A, matching, exact, nodes) -> MatchingResult:
    matching = tuple(sorted(matching))
    X, Y = matching_certificate(A, matching)
    return MatchingResult(len(matching), matching, X, Y, exact, nodes)


def subrank(A: NonnegativeMatrix, node_budget: int = DEFAULT_NODE_BUDGET) -> MatchingResult:
    """Maximum induced matching of supp(A) by branch and bound.

    Cells are ordered by ascending conflict degree (ties row-major). The bound
    at a node is the current size plus the number of distinct rows (or
    columns, whichever is fewer) still available, since a matching uses each
    row and column at most once.
    """
    cells0 = [(i, j) for i in range(A.rows) for j in range(A.cols) if A[i, j] > 0]
    if not cells0:
        return _build_result(A, (), True, 0)
    conf0 = _conflict_graph(A, cells0)
    degree = [bin(c).count("1") for c in conf0]
    order = sorted(range(len(cells0)), key=lambda v: (degree[v], cells0[v]))
    cells = [cells0[v] for v in order]
    conf = _conflict_graph(A, cells)
    n = len(cells)

    row_mask: dict[int, int] = {}
    col_mask: dict[int, int] = {}
    for v, (i, j) in enumerate(cells):
        row_mask[i] = row_mask.get(i, 0) | (1 << v)
        col_mask[j] = col_mask.get(j, 0) | (1 << v)
    row_masks = list(row_mask.values())
    col_masks = list(col_mask.values())

    def line_bound(cand: int) -> int:
        r = sum(1 for m in row_masks if cand & m)
        c = sum(1 for m in col_masks if cand & m)
        return min(r, c)

    # greedy incumbent
    best: list[int] = []
    avail = (1 << n) - 1
    for v in range(n):
        if avail >> v & 1:
            best.append(v)
            avail &= ~conf[v]

    nodes = 0
    exhausted = False

    def search(chosen: list[int], cand: int) -> None:
        nonlocal best, nodes, exhausted
        while cand:
            if exhausted:
                return
            if len(chosen) + line_bound(cand) <= len(best):
                return
            nodes += 1
            if nodes > node_budget:
                exhausted = True
                return
            v = (cand & -cand).bit_length() - 1
            chosen.append(v)
            search(chosen, cand & ~conf[v])
            chosen.pop()
            cand &= ~(1 << v)
        if len(chosen) > len(best):
            best = list(chosen)

    search([], (1 << n) - 1)
    return _build_result(A, [cells[v] for v in best], not exhausted, nodes)


def subrank_bruteforce(A: NonnegativeMatrix,
                       max_support: int = BRUTEFORCE_SUPPORT_LIMIT) -> int:
    """Largest induced matching by checking every subset of the support."""
    cells = [(i, j) for i in range(A.rows) for j in range(A.cols) if A[i, j] > 0]
    if len(cells) > max_support:
        raise BudgetExceeded(
            f"support has {len(cells)} cells, brute force limit is {max_support}")
    for k in range(min(A.rows, A.cols, len(cells)), 0, -1):
        for subset in itertools.combinations(cells, k):
            if is_induced_matching(A, subset):
                return k
    return 0
