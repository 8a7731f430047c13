"""Seeded property harnesses.

``spectral_point_check`` samples matrices and checks the four laws a spectral
point obeys: multiplicative under (x), additive under (+), phi(I_n) = n, and
monotone under restriction (phi(X B Y^T) <= phi(B)).

``strassen_axiom_check`` checks the preorder side: I_n <= I_m exactly when
n <= m, closure of witnesses under (+) and (x), A <= I_r (x) B for any
nonzero B when r bounds the nonnegative rank, and the identity
(A (+) A)^(x2) ~= four copies of A^(x2).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .congruence import commutation_witness
from .cover import fractional_cover
from .linalg import rank
from .matrix import NonnegativeMatrix, direct_sum, kron_power, kronecker
from .nnrank import nnrank_bounds
from .sampling import random_matrix, random_shape
from .witnesses import (compose_witness_product, compose_witness_sum, identity_embedding,
                        sample_witness, witness_into_tensor)
from .errors import WitnessError

POINTS: dict[str, Callable[[NonnegativeMatrix], Fraction]] = {
    "rank": lambda A: Fraction(rank(A).rank),
    "fractional_cover": lambda A: fractional_cover(A).value,
}


@dataclass
class LawReport:
    name: str
    trials: int
    checks: dict = field(default_factory=dict)
    skipped: dict = field(default_factory=dict)
    violations: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def record(self, law: str, ok: bool, **context) -> None:
        self.checks[law] = self.checks.get(law, 0) + 1
        if not ok:
            self.violations.append({"law": law, **context})

    def skip(self, law: str) -> None:
        self.skipped[law] = self.skipped.get(law, 0) + 1

    def to_json(self) -> dict:
        return {"name": self.name, "trials": self.trials, "passed": self.passed,
                "checks": dict(sorted(self.checks.items())),
                "skipped": dict(sorted(self.skipped.items())),
                "violations": self.violations}


def _show(A: NonnegativeMatrix) -> list[list[str]]:
    return A.to_strings()


def spectral_point_check(point: str, trials: int = 100, seed: int = 0,
                         max_dim: int = 3, laws: tuple[str, ...] | None = None) -> LawReport:
    if point not in POINTS:
        raise ValueError(f"unknown spectral point {point!r}; choose from {sorted(POINTS)}")
    if trials < 1:
        raise ValueError("trials must be >= 1")
    phi = POINTS[point]
    laws = laws or ("multiplicative", "additive", "normalized", "monotone")
    rng = random.Random(seed)
    report = LawReport(point, trials)
    for _ in range(trials):
        A = random_matrix(rng, *random_shape(rng, max_dim))
        B = random_matrix(rng, *random_shape(rng, max_dim))
        fa, fb = phi(A), phi(B)
        if "multiplicative" in laws:
            got = phi(kronecker(A, B))
            report.record("multiplicative", got == fa * fb, A=_show(A), B=_show(B),
                          lhs=str(got), rhs=str(fa * fb))
        if "additive" in laws:
            got = phi(direct_sum(A, B))
            report.record("additive", got == fa + fb, A=_show(A), B=_show(B),
                          lhs=str(got), rhs=str(fa + fb))
        if "normalized" in laws:
            n = rng.randint(1, 6)
            got = phi(NonnegativeMatrix.identity(n))
            report.record("normalized", got == n, n=n, value=str(got))
        if "monotone" in laws:
            w = sample_witness(rng, B, *random_shape(rng, max_dim))
            got = phi(w.lhs)
            report.record("monotone", got <= fb, B=_show(B), X=_show(w.left),
                          Y=_show(w.right), lhs=str(got), rhs=str(fb))
    return report


def strassen_axiom_check(trials: int = 100, seed: int = 0, max_dim: int = 3,
                         duality_trials: int = 0) -> LawReport:
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = random.Random(seed)
    report = LawReport("strassen", trials)

    # (i) identities: I_n <= I_m iff n <= m. For n > m the rank of X I_m Y^T
    # is at most m < n, which rules out a witness.
    for n in range(1, max_dim + 3):
        for m in range(1, max_dim + 3):
            if n <= m:
                report.record("identity_order", identity_embedding(n, m).holds(), n=n, m=m)
            else:
                report.record("identity_order", rank(NonnegativeMatrix.identity(m)).rank < n,
                              n=n, m=m)

    for _ in range(trials):
        B = random_matrix(rng, *random_shape(rng, max_dim))
        D = random_matrix(rng, *random_shape(rng, max_dim))
        w1 = sample_witness(rng, B, *random_shape(rng, max_dim))
        w2 = sample_witness(rng, D, *random_shape(rng, max_dim))
        for law, compose in (("compose_sum", compose_witness_sum),
                             ("compose_product", compose_witness_product)):
            try:
                ok = compose(w1, w2).holds()
            except WitnessError:
                ok = False
            report.record(law, ok, B=_show(B), D=_show(D))

        # (iii) A <= I_r (x) B with r the certified nonnegative-rank upper bound
        A = random_matrix(rng, *random_shape(rng, max_dim))
        if B.is_zero():
            report.skip("tensor_domination")
        else:
            bounds = nnrank_bounds(A)
            W, H = bounds.exact_factors
            if W.cols == 0:
                report.skip("tensor_domination")
            else:
                try:
                    ok = witness_into_tensor(A, W, H, B).holds()
                except WitnessError:
                    ok = False
                report.record("tensor_domination", ok, A=_show(A), B=_show(B),
                              r=bounds.certified_upper)

    for _ in range(duality_trials):
        A = random_matrix(rng, 2, 2)
        report.record("duality_identity", duality_identity_holds(A), A=_show(A))
    return report


def duality_identity_holds(A: NonnegativeMatrix) -> bool:
    """(A (+) A)^(x2) is congruent to the direct sum of four copies of A^(x2)."""
    lhs = kron_power(direct_sum(A, A), 2)
    A2 = kron_power(A, 2)
    rhs = direct_sum(direct_sum(A2, A2), direct_sum(A2, A2))
    return commutation_witness(2, A).holds(lhs, rhs)
