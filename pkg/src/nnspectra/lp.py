"""Exact rational simplex (two-phase tableau, Bland's rule).

The solver works on

    maximize   c^T x
    subject to A_i x <= b_i   (or >= b_i, per ``senses``)
               x >= 0

and returns an optimal basic solution together with the dual vector y,
normalised so that the optimal value equals sum_i b_i y_i. Every number is a
:class:`fractions.Fraction`; nothing is rounded.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import InfeasibleLP, UnboundedLP

_ZERO = Fraction(0)


@dataclass(frozen=True)
class LPResult:
    value: Fraction
    x: tuple[Fraction, ...]
    duals: tuple[Fraction, ...]
    basis: tuple[int, ...]
    pivots: int


class _Tableau:
    def __init__(self, rows: list[list[Fraction]], basis: list[int]):
        self.rows = rows
        self.basis = basis
        self.obj: list[Fraction] = []
        self.pivots = 0

    def set_objective(self, cost: Sequence[Fraction]) -> None:
        # reduced cost r_j = c_B B^-1 A_j - c_j; last entry is the objective value
        width = len(self.rows[0]) if self.rows else len(cost) + 1
        obj = [-Fraction(c) for c in cost] + [_ZERO] * (width - len(cost))
        for row, bv in zip(self.rows, self.basis):
            cb = cost[bv] if bv < len(cost) else _ZERO
            if cb:
                for j, v in enumerate(row):
                    if v:
                        obj[j] += cb * v
        self.obj = obj

    def pivot(self, r: int, c: int) -> None:
        prow = self.rows[r]
        p = prow[c]
        if p != 1:
            prow = [v / p for v in prow]
            self.rows[r] = prow
        nz = [j for j, v in enumerate(prow) if v]
        for i, row in enumerate(self.rows):
            if i != r:
                f = row[c]
                if f:
                    for j in nz:
                        row[j] -= f * prow[j]
        f = self.obj[c]
        if f:
            for j in nz:
                self.obj[j] -= f * prow[j]
        self.basis[r] = c
        self.pivots += 1

    def run(self, allowed: int) -> None:
        """Bland's rule over columns [0, allowed)."""
        while True:
            enter = next((j for j in range(allowed) if self.obj[j] < 0), None)
            if enter is None:
                return
            best = None
            for i, row in enumerate(self.rows):
                a = row[enter]
                if a > 0:
                    ratio = row[-1] / a
                    key = (ratio, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                raise UnboundedLP(f"objective unbounded along column {enter}")
            self.pivot(best[1], enter)


def solve_lp_exact(A: Sequence[Sequence], b: Sequence, c: Sequence,
                   maximize: bool = True,
                   senses: Sequence[str] | None = None) -> LPResult:
    """Solve an LP with rational data exactly.

    ``senses[i]`` is ``"<="`` (default) or ``">="``. Raises
    :class:`InfeasibleLP` or :class:`UnboundedLP`.
    """
    m = len(A)
    n = len(c)
    A = [[Fraction(v) for v in row] for row in A]
    b = [Fraction(v) for v in b]
    c = [Fraction(v) for v in c]
    if senses is None:
        senses = ["<="] * m
    if any(len(row) != n for row in A) or len(b) != m or len(senses) != m:
        raise ValueError("inconsistent LP dimensions")
    obj_sign = 1 if maximize else -1
    row_sign = []
    for s in senses:
        if s == "<=":
            row_sign.append(1)
        elif s == ">=":
            row_sign.append(-1)
        else:
            raise ValueError(f"unsupported constraint sense {s!r}")
    # internal form: maximize cc^T x, AA x <= bb
    cc = [obj_sign * v for v in c]
    AA = [[row_sign[i] * v for v in A[i]] for i in range(m)]
    bb = [row_sign[i] * b[i] for i in range(m)]

    neg = [i for i in range(m) if bb[i] < 0]
    n_art = len(neg)
    width = n + m + n_art + 1
    rows = []
    basis = []
    art_of = {i: n + m + k for k, i in enumerate(neg)}
    for i in range(m):
        row = [_ZERO] * width
        if i in art_of:
            for j in range(n):
                row[j] = -AA[i][j]
            row[n + i] = Fraction(-1)
            row[art_of[i]] = Fraction(1)
            row[-1] = -bb[i]
            basis.append(art_of[i])
        else:
            for j in range(n):
                row[j] = AA[i][j]
            row[n + i] = Fraction(1)
            row[-1] = bb[i]
            basis.append(n + i)
        rows.append(row)

    tab = _Tableau(rows, basis)
    if n_art:
        phase1 = [_ZERO] * (n + m) + [Fraction(-1)] * n_art
        tab.set_objective(phase1)
        tab.run(n + m + n_art)
        if tab.obj[-1] < 0:
            raise InfeasibleLP("phase I optimum is negative")
        # drive remaining artificials out of the basis, dropping redundant rows
        i = 0
        while i < len(tab.rows):
            if tab.basis[i] >= n + m:
                j = next((j for j in range(n + m) if tab.rows[i][j] != 0), None)
                if j is None:
                    del tab.rows[i]
                    del tab.basis[i]
                    continue
                tab.pivot(i, j)
            i += 1
        tab.rows = [row[:n + m] + [row[-1]] for row in tab.rows]

    tab.set_objective(cc + [_ZERO] * m)
    tab.run(n + m)

    x = [_ZERO] * n
    for row, bv in zip(tab.rows, tab.basis):
        if bv < n:
            x[bv] = row[-1]
    y_int = [tab.obj[n + i] for i in range(m)]
    duals = tuple(obj_sign * row_sign[i] * y_int[i] for i in range(m))
    value = obj_sign * tab.obj[-1]
    return LPResult(value, tuple(x), duals, tuple(tab.basis), tab.pivots)
