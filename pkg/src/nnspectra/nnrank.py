"""Certified bounds on the nonnegative rank.

The nonnegative rank is additive over direct sums, so the matrix is split
into the connected components of its support graph and each block is
bounded separately:

* lower bound ``max(rank, F_1)``: the r rank-one terms of a nonnegative
  factorization have rectangular supports that cover supp(A);
* upper bound: the best exactly verified factorization among the trivial one
  (``A = I A`` or ``A = A I``), a rank-one factorization, a partition of the
  support into rank-one rectangles, and multiplicative-update NMF attempts
  rounded to rationals. An NMF attempt that reaches the tolerance but does not
  round to an exact factorization lowers ``upper`` without certifying it.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .cover import tfold_cover
from .linalg import rank
from .matrix import NonnegativeMatrix

DEFAULT_TOL = 1e-9
DEFAULT_SEEDS = (0, 1, 2)
DEFAULT_ITERATIONS = 200
ROUNDING_DENOMINATOR = 10**6
PARTITION_NODE_BUDGET = 20_000


@dataclass(frozen=True)
class Factorization:
    """Float factors from the heuristic, with max relative entry residual."""

    W: tuple[tuple[float, ...], ...]
    H: tuple[tuple[float, ...], ...]
    residual: float

    def to_json(self) -> dict:
        return {"W": [list(r) for r in self.W], "H": [list(r) for r in self.H],
                "residual": self.residual}


@dataclass(frozen=True)
class NnrankBounds:
    lower: int
    upper: int
    upper_certified: bool
    lower_sources: tuple[str, ...]
    certified_upper: int
    exact_factors: tuple[NonnegativeMatrix, NonnegativeMatrix] | None = None
    factorization: Factorization | None = None
    components: tuple["NnrankBounds", ...] = field(default=(), repr=False)


def _components(A: NonnegativeMatrix) -> list[tuple[list[int], list[int]]]:
    """Connected components of the bipartite support graph, as (rows, cols)."""
    parent = list(range(A.rows + A.cols))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i in range(A.rows):
        for j in range(A.cols):
            if A[i, j] > 0:
                a, b = find(i), find(A.rows + j)
                if a != b:
                    parent[max(a, b)] = min(a, b)
    groups: dict[int, tuple[list[int], list[int]]] = {}
    for i in range(A.rows):
        if any(x > 0 for x in A.row(i)):
            groups.setdefault(find(i), ([], []))[0].append(i)
    for j in range(A.cols):
        if any(A[i, j] > 0 for i in range(A.rows)):
            groups.setdefault(find(A.rows + j), ([], []))[1].append(j)
    return sorted(groups.values(), key=lambda g: g[0][0])


def nnrank_block_decompose(A: NonnegativeMatrix) -> list[NonnegativeMatrix]:
    """Support components of A as submatrices, zero lines dropped."""
    return [A.submatrix(r, c) for r, c in _components(A)]


# --- exact factorizations ---------------------------------------------------

def _verify(A, W, H) -> bool:
    return W @ H == A


def _trivial_factors(A: NonnegativeMatrix):
    if A.rows <= A.cols:
        return NonnegativeMatrix.identity(A.rows), A
    return A, NonnegativeMatrix.identity(A.cols)


def _rank_one_factors(A: NonnegativeMatrix):
    i0, j0 = next((i, j) for i in range(A.rows) for j in range(A.cols) if A[i, j] > 0)
    W = NonnegativeMatrix([[A[i, j0]] for i in range(A.rows)])
    H = NonnegativeMatrix([[A[i0, j] / A[i0, j0] for j in range(A.cols)]])
    return (W, H) if _verify(A, W, H) else None


def _rectangle_factors(A, rects) -> tuple[NonnegativeMatrix, NonnegativeMatrix]:
    zero = Fraction(0)
    W = [[zero] * len(rects) for _ in range(A.rows)]
    H = [[zero] * A.cols for _ in rects]
    for k, (X, Y) in enumerate(rects):
        x0, y0 = X[0], Y[0]
        for i in X:
            W[i][k] = A[i, y0]
        for j in Y:
            H[k][j] = A[x0, j] / A[x0, y0]
    return NonnegativeMatrix(W, A.rows, len(rects)), NonnegativeMatrix(H, len(rects), A.cols)


def rank_one_partition(A: NonnegativeMatrix, k: int,
                       node_budget: int = PARTITION_NODE_BUDGET):
    """Partition supp(A) into at most k rectangles on which A has rank one.

    Returns the rectangles as (rows, cols) tuples, or None if none was found
    within the budget. Each candidate rectangle through the first open cell
    takes a column set Y from that cell's row and every row proportional to
    it on Y, so the candidate family is invariant under row/column
    permutations and positive scalings.
    """
    open_cells = {(i, j) for i in range(A.rows) for j in range(A.cols) if A[i, j] > 0}
    nodes = 0

    def candidates(cell, free):
        i, j = cell
        others = [c for c in range(A.cols) if c != j and (i, c) in free]
        for size in range(len(others), -1, -1):
            for extra in itertools.combinations(others, size):
                Y = tuple(sorted((j,) + extra))
                X = tuple(r for r in range(A.rows)
                          if all((r, c) in free for c in Y)
                          and all(A[r, c] * A[i, j] == A[i, c] * A[r, j] for c in Y))
                yield X, Y

    def search(free, budget_left, picked):
        nonlocal nodes
        if not free:
            return list(picked)
        if budget_left == 0:
            return None
        nodes += 1
        if nodes > node_budget:
            return None
        cell = min(free)
        for X, Y in candidates(cell, free):
            covered = {(r, c) for r in X for c in Y}
            picked.append((X, Y))
            found = search(free - covered, budget_left - 1, picked)
            picked.pop()
            if found is not None:
                return found
        return None

    return search(frozenset(open_cells), k, [])


# --- heuristic --------------------------------------------------------------

def _mu_nmf(V: np.ndarray, r: int, seed: int, iterations: int):
    rng = np.random.default_rng(seed)
    m, n = V.shape
    scale = np.sqrt(V.mean() / r) if V.mean() > 0 else 1.0
    W = rng.random((m, r)) * scale
    H = rng.random((r, n)) * scale
    eps = 1e-300
    for _ in range(iterations):
        H *= (W.T @ V) / (W.T @ W @ H + eps)
        W *= (V @ H.T) / (W @ H @ H.T + eps)
    return W, H


def _residual(V: np.ndarray, W: np.ndarray, H: np.ndarray) -> float:
    top = np.abs(V).max()
    return float(np.abs(V - W @ H).max() / top) if top > 0 else 0.0


def _rationalize(A: NonnegativeMatrix, W: np.ndarray, H: np.ndarray):
    def conv(M):
        return NonnegativeMatrix(
            [[Fraction(float(x)).limit_denominator(ROUNDING_DENOMINATOR) for x in row]
             for row in M])
    Wq, Hq = conv(W), conv(H)
    return (Wq, Hq) if _verify(A, Wq, Hq) else None


def _as_floats(M: NonnegativeMatrix) -> tuple[tuple[float, ...], ...]:
    return tuple(tuple(float(x) for x in r) for r in M.entries)


# --- bounds -----------------------------------------------------------------

def _component_bounds(C: NonnegativeMatrix, tol: float, seeds: Sequence[int],
                      iterations: int) -> NnrankBounds:
    r = rank(C).rank
    f1 = int(tfold_cover(C, 1).value)
    lower = max(r, f1)
    sources = tuple(tag for tag, v in (("rank", r), ("integer_cover", f1)) if v == lower)

    best = _trivial_factors(C)
    if r == 1:
        best = _rank_one_factors(C) or best
    if best[0].cols > lower:
        rects = rank_one_partition(C, lower)
        if rects is not None:
            best = _rectangle_factors(C, rects)
    certified_upper = best[0].cols

    upper = certified_upper
    float_fact = None
    if lower < certified_upper:
        V = np.array([[float(x) for x in row] for row in C.entries])
        for k in range(lower, certified_upper):
            hit = None
            for seed in seeds:
                W, H = _mu_nmf(V, k, seed, iterations)
                res = _residual(V, W, H)
                if res <= tol and (hit is None or res < hit[2]):
                    hit = (W, H, res)
            if hit is None:
                continue
            W, H, res = hit
            exact = _rationalize(C, W, H)
            if exact is not None:
                best = exact
                certified_upper = upper = k
            else:
                upper = k
                float_fact = Factorization(tuple(map(tuple, W.tolist())),
                                           tuple(map(tuple, H.tolist())), res)
            break

    if float_fact is None:
        float_fact = Factorization(_as_floats(best[0]), _as_floats(best[1]), 0.0)
    return NnrankBounds(lower, upper, upper == certified_upper, sources,
                        certified_upper, best, float_fact)


def _place_blocks(A: NonnegativeMatrix, comps, blocks) -> tuple[NonnegativeMatrix, NonnegativeMatrix]:
    inner = sum(W.cols for W, _ in blocks)
    zero = Fraction(0)
    W = [[zero] * inner for _ in range(A.rows)]
    H = [[zero] * A.cols for _ in range(inner)]
    off = 0
    for (rows, cols), (Wc, Hc) in zip(comps, blocks):
        for a, i in enumerate(rows):
            for k in range(Wc.cols):
                W[i][off + k] = Wc[a, k]
        for k in range(Hc.rows):
            for b, j in enumerate(cols):
                H[off + k][j] = Hc[k, b]
        off += Wc.cols
    return NonnegativeMatrix(W, A.rows, inner), NonnegativeMatrix(H, inner, A.cols)


def nnrank_bounds(A: NonnegativeMatrix, tol: float = DEFAULT_TOL,
                  seeds: Sequence[int] = DEFAULT_SEEDS,
                  iterations: int = DEFAULT_ITERATIONS) -> NnrankBounds:
    """Interval [lower, upper] containing nrank(A), summed over support blocks.

    ``certified_upper`` is always backed by ``exact_factors`` (W, H) with
    W @ H == A exactly; ``upper`` may be smaller when the heuristic reached
    ``tol`` without an exact rounding, in which case ``upper_certified`` is
    False and ``factorization`` holds the float factors.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    comps = _components(A)
    parts = [_component_bounds(A.submatrix(r, c), tol, seeds, iterations)
             for r, c in comps]
    lower = sum(p.lower for p in parts)
    upper = sum(p.upper for p in parts)
    cert = sum(p.certified_upper for p in parts)
    sources = tuple(sorted({s for p in parts for s in p.lower_sources}))
    exact = _place_blocks(A, comps, [p.exact_factors for p in parts])

    def float_block(p):
        f = p.factorization
        return (NonnegativeMatrix([[Fraction(x) for x in r] for r in f.W], len(f.W),
                                  len(f.H)),
                NonnegativeMatrix([[Fraction(x) for x in r] for r in f.H], len(f.H),
                                  len(f.H[0]) if f.H else 0))

    if all(p.upper_certified for p in parts):
        fact = Factorization(_as_floats(exact[0]), _as_floats(exact[1]), 0.0)
    else:
        Wf, Hf = _place_blocks(A, comps, [float_block(p) for p in parts])
        V = np.array([[float(x) for x in row] for row in A.entries])
        Wn = np.array(_as_floats(Wf)).reshape(A.rows, Wf.cols)
        Hn = np.array(_as_floats(Hf)).reshape(Hf.rows, A.cols)
        fact = Factorization(_as_floats(Wf), _as_floats(Hf), _residual(V, Wn, Hn))
    return NnrankBounds(lower, upper, upper == cert, sources, cert, exact, fact,
                        tuple(parts))


def certified_upper_bound(A: NonnegativeMatrix) -> tuple[int, tuple[NonnegativeMatrix, NonnegativeMatrix]]:
    """Cheap certified upper bound (no lower-bound work, no NMF).

    Per support block: the trivial factorization, or rank one when it applies.
    """
    comps = _components(A)
    blocks = []
    for r, c in comps:
        C = A.submatrix(r, c)
        best = _trivial_factors(C)
        if rank(C).rank == 1:
            best = _rank_one_factors(C) or best
        blocks.append(best)
    W, H = _place_blocks(A, comps, blocks)
    return W.cols, (W, H)
