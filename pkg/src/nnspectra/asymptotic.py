"""Two-sided estimates of the asymptotic nonnegative rank and subrank.

Both asymptotic quantities are sandwiched by the spectral points rank and F:
every spectral point lies between them, the asymptotic rank is the largest
and the asymptotic subrank the smallest. So

    max(rank, F) <= asymptotic nrank <= nrank(A^(xn))^(1/n)   for every n
    max_n Q(A^(xn))^(1/n) <= asymptotic subrank <= min(rank, F)

The finite-power sides are computed for n = 1..max_power. Irrational n-th
roots are replaced by rigorous rational bounds with denominator 10^6
(rounded down for lower bounds, up for upper bounds).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .cover import fractional_cover
from .errors import BudgetExceeded
from .linalg import rank
from .matching import DEFAULT_NODE_BUDGET, subrank
from .matrix import DEFAULT_CELL_BUDGET, NonnegativeMatrix, format_rational, kron_power
from .nnrank import DEFAULT_SEEDS, DEFAULT_TOL, certified_upper_bound, nnrank_bounds
from .triangular import (DEFAULT_MAX_STRINGS, diagonal_support, is_triangular,
                         triangular_certificate)

ROOT_DENOMINATOR = 10**6


def iroot(x: int, n: int) -> int:
    """floor(x ** (1/n)) for integers x >= 0, n >= 1."""
    if x < 2 or n == 1:
        return x
    r = 1 << ((x.bit_length() + n - 1) // n)
    while True:
        s = ((n - 1) * r + x // r ** (n - 1)) // n
        if s >= r:
            break
        r = s
    while r ** n > x:
        r -= 1
    while (r + 1) ** n <= x:
        r += 1
    return r


def root_lower(x: int, n: int, den: int = ROOT_DENOMINATOR) -> Fraction:
    """Largest p/den with (p/den)^n <= x; exact when the root is p/den."""
    return Fraction(iroot(x * den ** n, n), den)


def root_upper(x: int, n: int, den: int = ROOT_DENOMINATOR) -> Fraction:
    """Smallest p/den with (p/den)^n >= x."""
    scaled = x * den ** n
    p = iroot(scaled, n)
    if p ** n < scaled:
        p += 1
    return Fraction(p, den)


@dataclass(frozen=True)
class PowerEvidence:
    n: int
    subrank: int
    subrank_exact: bool
    nnrank_upper: int
    subrank_root: float
    nnrank_root: float

    def to_json(self) -> dict:
        return {"n": self.n, "subrank": self.subrank, "subrank_exact": self.subrank_exact,
                "nnrank_upper": self.nnrank_upper, "subrank_root": self.subrank_root,
                "nnrank_root": self.nnrank_root}


@dataclass(frozen=True)
class AsymptoticSandwich:
    asynrank_lower: Fraction
    asynrank_upper: Fraction
    asympsubrank_lower: Fraction
    asympsubrank_upper: Fraction
    per_power: tuple[PowerEvidence, ...]
    certificates: dict = field(default_factory=dict, compare=False)

    def ordered(self) -> bool:
        return (self.asympsubrank_lower <= self.asympsubrank_upper
                <= self.asynrank_lower <= self.asynrank_upper)

    def to_json(self) -> dict:
        return {
            "asynrank": {"lower": format_rational(self.asynrank_lower),
                         "upper": format_rational(self.asynrank_upper)},
            "asympsubrank": {"lower": format_rational(self.asympsubrank_lower),
                             "upper": format_rational(self.asympsubrank_upper)},
            "per_power": [p.to_json() for p in self.per_power],
            "certificates": self.certificates,
        }


def asymptotic_report(A: NonnegativeMatrix, max_power: int = 2,
                      cell_budget: int = DEFAULT_CELL_BUDGET,
                      node_budget: int = DEFAULT_NODE_BUDGET,
                      tol: float = DEFAULT_TOL,
                      seeds: Sequence[int] = DEFAULT_SEEDS) -> AsymptoticSandwich:
    if max_power < 1:
        raise ValueError("max_power must be >= 1")
    if (A.rows * A.cols) ** max_power > cell_budget:
        raise BudgetExceeded(
            f"A^(x{max_power}) exceeds the cell budget {cell_budget}")
    zero = Fraction(0)
    if A.is_zero():
        evidence = tuple(PowerEvidence(n, 0, True, 0, 0.0, 0.0)
                         for n in range(1, max_power + 1))
        return AsymptoticSandwich(zero, zero, zero, zero, evidence, {})

    rk = rank(A).rank
    cover = fractional_cover(A)
    F = cover.value
    bounds = nnrank_bounds(A, tol=tol, seeds=seeds)
    base_upper = bounds.certified_upper

    sub_lower = Fraction(0)
    nn_upper: Fraction | None = None
    evidence = []
    for n in range(1, max_power + 1):
        if n == 1:
            P = A
            up = base_upper
        else:
            P = kron_power(A, n, cell_budget)
            up = min(base_upper ** n, certified_upper_bound(P)[0])
        sub = subrank(P, node_budget)
        sub_lower = max(sub_lower, root_lower(sub.size, n))
        cand = root_upper(up, n)
        nn_upper = cand if nn_upper is None else min(nn_upper, cand)
        evidence.append(PowerEvidence(n, sub.size, sub.exact, up,
                                      sub.size ** (1 / n), up ** (1 / n)))

    certs: dict = {
        "rank": rk,
        "F": format_rational(F),
        "nnrank": {"lower": bounds.lower, "certified_upper": base_upper,
                   "upper": bounds.upper, "upper_certified": bounds.upper_certified},
    }
    tri = _triangular_lower(A)
    if tri is not None:
        d, cert = tri
        sub_lower = max(sub_lower, Fraction(d))
        certs["triangular"] = cert

    return AsymptoticSandwich(
        asynrank_lower=max(Fraction(rk), F),
        asynrank_upper=nn_upper,
        asympsubrank_lower=sub_lower,
        asympsubrank_upper=min(Fraction(rk), F),
        per_power=tuple(evidence),
        certificates=certs,
    )


def _triangular_lower(A: NonnegativeMatrix):
    """|V| from the triangular diagonal-block argument, for A or its transpose."""
    for M, orientation in ((A, "rows"), (A.T, "transpose")):
        if not is_triangular(M):
            continue
        V = diagonal_support(M)
        if not V:
            continue
        d = len(V)
        try:
            cert = triangular_certificate(M, d, DEFAULT_MAX_STRINGS).to_json()
        except BudgetExceeded:
            cert = {"V": list(V), "d": d}
        cert["orientation"] = orientation
        return d, cert
    return None
