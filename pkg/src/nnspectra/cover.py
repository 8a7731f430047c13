"""Monochromatic rectangles, the fractional cover number and t-fold covers.

A monochromatic rectangle of A is a block X x Y lying entirely inside
supp(A). The fractional cover number F(A) is the optimum of

    minimize sum_R tau(R)  s.t.  sum_{R contains (a,b)} tau(R) >= 1,  tau >= 0

over all rectangles R, and F_t(A) is the integer version with coverage t.
Only inclusion-maximal rectangles are used as LP columns: any rectangle sits
inside a maximal one, so moving its weight there changes neither feasibility
nor objective.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

from .errors import BudgetExceeded, DomainError
from .lp import solve_lp_exact
from .matrix import NonnegativeMatrix, SupportPattern, format_rational, support

DEFAULT_RECTANGLE_BUDGET = 100_000
DEFAULT_ILP_NODE_BUDGET = 500_000


@dataclass(frozen=True, order=True)
class Rectangle:
    row_set: tuple[int, ...]
    col_set: tuple[int, ...]

    def __post_init__(self):
        if not self.row_set or not self.col_set:
            raise DomainError("rectangle needs nonempty row and column sets")

    def cells(self) -> Iterator[tuple[int, int]]:
        return itertools.product(self.row_set, self.col_set)

    def __contains__(self, cell) -> bool:
        i, j = cell
        return i in self.row_set and j in self.col_set

    def size(self) -> int:
        return len(self.row_set) * len(self.col_set)

    def is_monochromatic(self, S: SupportPattern) -> bool:
        return all(c in S.cells for c in self.cells())

    def to_json(self) -> dict:
        return {"rows": list(self.row_set), "cols": list(self.col_set)}


@dataclass(frozen=True)
class CoverSolution:
    """Optimal cover with its certificates.

    ``mode`` is ``"fractional"`` (LP optimum, both primal and dual weights)
    or ``"integer"`` (a t-fold multiset; ``primal`` maps each rectangle to its
    multiplicity and ``dual`` is empty).
    """

    value: Fraction
    primal: dict = field(default_factory=dict)
    dual: dict = field(default_factory=dict)
    mode: str = "fractional"
    t: int = 1

    def to_json(self) -> dict:
        out = {
            "value": format_rational(self.value),
            "mode": self.mode,
            "primal": [dict(R.to_json(), weight=format_rational(w))
                       for R, w in sorted(self.primal.items())],
        }
        if self.mode == "integer":
            out["t"] = self.t
        else:
            out["dual"] = [{"cell": list(c), "weight": format_rational(w)}
                           for c, w in sorted(self.dual.items())]
        return out


def _bits(mask: int) -> tuple[int, ...]:
    out = []
    k = 0
    while mask:
        if mask & 1:
            out.append(k)
        mask >>= 1
        k += 1
    return tuple(out)


def enumerate_maximal_rectangles(S: SupportPattern,
                                 max_count: int = DEFAULT_RECTANGLE_BUDGET
                                 ) -> list[Rectangle]:
    """All inclusion-maximal monochromatic rectangles of a support pattern.

    Close-by-one enumeration of the formal concepts of the row/column
    incidence relation; a concept with nonempty extent and intent is exactly
    a maximal rectangle. The canonicity test emits each one once.
    """
    if not S.cells:
        return []
    row_masks = S.row_masks()
    col_masks = S.col_masks()
    all_cols = (1 << S.cols) - 1

    def intent_of(extent: int) -> int:
        out = all_cols
        for i in _bits(extent):
            out &= row_masks[i]
        return out

    found: list[tuple[int, int]] = []

    def emit(ext: int, intent: int) -> None:
        if ext and intent:
            found.append((ext, intent))
            if len(found) > max_count:
                raise BudgetExceeded(
                    f"more than {max_count} maximal rectangles", partial=None)

    def grow(ext: int, intent: int, start: int) -> None:
        for j in range(start, S.cols):
            if intent >> j & 1:
                continue
            new_ext = ext & col_masks[j]
            if not new_ext:
                continue
            new_int = intent_of(new_ext)
            low = (1 << j) - 1
            if new_int & low != intent & low:
                continue
            emit(new_ext, new_int)
            grow(new_ext, new_int, j + 1)

    top = (1 << S.rows) - 1
    top_int = intent_of(top)
    emit(top, top_int)
    grow(top, top_int, 0)
    return sorted(Rectangle(_bits(e), _bits(i)) for e, i in found)


def enumerate_all_rectangles(S: SupportPattern) -> list[Rectangle]:
    """Every monochromatic rectangle, maximal or not. Exponential; tiny inputs only."""
    out = []
    rows = range(S.rows)
    cols = range(S.cols)
    for r in range(1, S.rows + 1):
        for X in itertools.combinations(rows, r):
            for c in range(1, S.cols + 1):
                for Y in itertools.combinations(cols, c):
                    if all((i, j) in S.cells for i in X for j in Y):
                        out.append(Rectangle(X, Y))
    return sorted(out)


def _solve_cover_lp(cells: list[tuple[int, int]], rects: list[Rectangle]) -> CoverSolution:
    # Solve the packing side (max sum mu, sum_{c in R} mu_c <= 1); b = 1 >= 0
    # so no phase I is needed, and the covering weights come out as its duals.
    index = {c: k for k, c in enumerate(cells)}
    A = []
    for R in rects:
        row = [0] * len(cells)
        for c in R.cells():
            row[index[c]] = 1
        A.append(row)
    res = solve_lp_exact(A, [1] * len(rects), [1] * len(cells), maximize=True)
    primal = {R: w for R, w in zip(rects, res.duals) if w}
    dual = {c: w for c, w in zip(cells, res.x) if w}
    sol = CoverSolution(res.value, primal, dual, "fractional", 1)
    _check_fractional(sol, cells, rects)
    return sol


def _check_fractional(sol: CoverSolution, cells, rects) -> None:
    cover = {c: Fraction(0) for c in cells}
    for R, w in sol.primal.items():
        if not (0 <= w <= 1):
            raise ArithmeticError(f"primal weight {w} out of [0, 1]")
        for c in R.cells():
            cover[c] += w
    if any(v < 1 for v in cover.values()):
        raise ArithmeticError("primal certificate leaves a cell under-covered")
    for R in rects:
        if sum((sol.dual.get(c, 0) for c in R.cells()), Fraction(0)) > 1:
            raise ArithmeticError(f"dual certificate violated on {R}")
    if any(not (0 <= w <= 1) for w in sol.dual.values()):
        raise ArithmeticError("dual weight out of [0, 1]")
    if sum(sol.primal.values(), Fraction(0)) != sol.value or \
            sum(sol.dual.values(), Fraction(0)) != sol.value:
        raise ArithmeticError("primal and dual objectives disagree")


def fractional_cover(A: NonnegativeMatrix, rectangles: str = "maximal",
                     max_rectangles: int = DEFAULT_RECTANGLE_BUDGET) -> CoverSolution:
    """F(A) with matching primal and dual certificates.

    ``rectangles="all"`` uses every monochromatic rectangle as an LP column
    instead of only the maximal ones; it exists to cross-check the reduction
    on small inputs.
    """
    S = support(A)
    if not S.cells:
        return CoverSolution(Fraction(0))
    if rectangles == "maximal":
        rects = enumerate_maximal_rectangles(S, max_rectangles)
    elif rectangles == "all":
        rects = enumerate_all_rectangles(S)
    else:
        raise ValueError(f"rectangles must be 'maximal' or 'all', got {rectangles!r}")
    return _solve_cover_lp(S.sorted_cells(), rects)


def tfold_cover(A: NonnegativeMatrix, t: int,
                node_budget: int = DEFAULT_ILP_NODE_BUDGET,
                max_rectangles: int = DEFAULT_RECTANGLE_BUDGET) -> CoverSolution:
    """Exact t-fold covering number F_t(A) by depth-first branch and bound.

    At each node the uncovered cell with the fewest candidate rectangles is
    chosen and every rectangle through it is tried, in order of decreasing
    LP weight. States (remaining coverage per cell) are memoised. The root
    lower bound ceil(t * F(A)) stops the search as soon as it is met.
    """
    if t < 1:
        raise DomainError(f"t must be a positive integer, got {t}")
    S = support(A)
    if not S.cells:
        return CoverSolution(Fraction(0), mode="integer", t=t)
    cells = S.sorted_cells()
    index = {c: k for k, c in enumerate(cells)}
    rects = enumerate_maximal_rectangles(S, max_rectangles)
    frac = _solve_cover_lp(cells, rects)
    root_bound = math.ceil(t * frac.value)

    members = [tuple(index[c] for c in R.cells()) for R in rects]
    weight = [frac.primal.get(R, Fraction(0)) for R in rects]
    through: list[list[int]] = [[] for _ in cells]
    for r, mem in enumerate(members):
        for k in mem:
            through[k].append(r)
    for k in range(len(cells)):
        through[k].sort(key=lambda r: (-weight[r], r))

    def apply(deficit: tuple[int, ...], r: int) -> tuple[int, ...]:
        d = list(deficit)
        for k in members[r]:
            if d[k]:
                d[k] -= 1
        return tuple(d)

    # greedy incumbent: repeatedly take the rectangle clearing the most deficit
    deficit = (t,) * len(cells)
    greedy: list[int] = []
    while any(deficit):
        r = max(range(len(rects)),
                key=lambda r: (sum(1 for k in members[r] if deficit[k]), -r))
        greedy.append(r)
        deficit = apply(deficit, r)
    best = list(greedy)

    seen: dict[tuple[int, ...], int] = {}
    nodes = 0
    chosen: list[int] = []

    def search(deficit: tuple[int, ...]) -> None:
        nonlocal best, nodes
        if len(best) <= root_bound:
            return
        count = len(chosen)
        total = sum(deficit)
        if total == 0:
            if count < len(best):
                best = list(chosen)
            return
        gain = max(sum(1 for k in mem if deficit[k]) for mem in members)
        bound = count + max(max(deficit), -(-total // gain))
        if bound >= len(best):
            return
        if seen.get(deficit, math.inf) <= count:
            return
        seen[deficit] = count
        nodes += 1
        if nodes > node_budget:
            raise BudgetExceeded(f"t-fold cover search exceeded {node_budget} nodes",
                                 partial=_integer_solution(rects, best, t))
        k = min((k for k in range(len(cells)) if deficit[k]),
                key=lambda k: (len(through[k]), k))
        for r in through[k]:
            chosen.append(r)
            search(apply(deficit, r))
            chosen.pop()

    search((t,) * len(cells))
    return _integer_solution(rects, best, t)


def _integer_solution(rects: list[Rectangle], picks: list[int], t: int) -> CoverSolution:
    counts: dict[Rectangle, Fraction] = {}
    for r in picks:
        counts[rects[r]] = counts.get(rects[r], Fraction(0)) + 1
    return CoverSolution(Fraction(len(picks)), counts, {}, "integer", t)


@dataclass(frozen=True)
class FStarEstimate:
    """The ratios F_t(A)/t for t = 1..t_max, with the LP value F(A) as floor."""

    floor: Fraction
    terms: tuple[tuple[int, Fraction], ...]

    def best(self) -> Fraction:
        return min(v for _, v in self.terms)

    def closed(self) -> bool:
        return self.best() == self.floor


def fstar_estimate(A: NonnegativeMatrix, t_max: int,
                   node_budget: int = DEFAULT_ILP_NODE_BUDGET) -> FStarEstimate:
    if t_max < 1:
        raise DomainError(f"t_max must be >= 1, got {t_max}")
    floor = fractional_cover(A).value
    if floor == 0:
        return FStarEstimate(floor, tuple((t, Fraction(0)) for t in range(1, t_max + 1)))
    terms = tuple((t, tfold_cover(A, t, node_budget).value / t)
                  for t in range(1, t_max + 1))
    return FStarEstimate(floor, terms)
