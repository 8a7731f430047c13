"""Restriction witnesses for the preorder A <= B  (A = X B Y^T, X, Y >= 0).

General feasibility of A <= B is a bilinear problem and is not decided here.
What is offered: exact verification, closure under direct sum and Kronecker
product, and constructions for the cases the theory needs.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import DomainError, WitnessError
from .matrix import NonnegativeMatrix, direct_sum, kronecker
from .sampling import random_matrix


@dataclass(frozen=True)
class RestrictionWitness:
    """``left`` X and ``right`` Y with X @ rhs @ Y.T == lhs."""

    left: NonnegativeMatrix
    right: NonnegativeMatrix
    lhs: NonnegativeMatrix
    rhs: NonnegativeMatrix

    def holds(self) -> bool:
        X, Y, A, B = self.left, self.right, self.lhs, self.rhs
        if X.shape != (A.rows, B.rows) or Y.shape != (A.cols, B.cols):
            return False
        return X @ B @ Y.T == A

    def verified(self) -> "RestrictionWitness":
        if not self.holds():
            raise WitnessError("X B Y^T does not reproduce the restricted matrix")
        return self


def identity_witness(A: NonnegativeMatrix) -> RestrictionWitness:
    return RestrictionWitness(NonnegativeMatrix.identity(A.rows),
                              NonnegativeMatrix.identity(A.cols), A, A)


def compose_witness_sum(w1: RestrictionWitness, w2: RestrictionWitness) -> RestrictionWitness:
    """From A <= B and C <= D, the witness for A (+) C <= B (+) D."""
    return RestrictionWitness(direct_sum(w1.left, w2.left), direct_sum(w1.right, w2.right),
                              direct_sum(w1.lhs, w2.lhs),
                              direct_sum(w1.rhs, w2.rhs)).verified()


def compose_witness_product(w1: RestrictionWitness, w2: RestrictionWitness) -> RestrictionWitness:
    """From A <= B and C <= D, the witness for A (x) C <= B (x) D."""
    return RestrictionWitness(kronecker(w1.left, w2.left), kronecker(w1.right, w2.right),
                              kronecker(w1.lhs, w2.lhs),
                              kronecker(w1.rhs, w2.rhs)).verified()


def identity_embedding(n: int, m: int) -> RestrictionWitness:
    """I_n <= I_m for n <= m, via X = Y = [I_n 0]."""
    if n > m:
        raise DomainError(f"I_{n} is not a restriction of I_{m}")
    X = NonnegativeMatrix([[1 if i == j else 0 for j in range(m)] for i in range(n)], n, m)
    return RestrictionWitness(X, X, NonnegativeMatrix.identity(n),
                              NonnegativeMatrix.identity(m)).verified()


def witness_from_factorization(A: NonnegativeMatrix, W: NonnegativeMatrix,
                               H: NonnegativeMatrix) -> RestrictionWitness:
    """A = W H with inner dimension r gives A <= I_r (X = W, Y = H^T)."""
    return RestrictionWitness(W, H.T, A, NonnegativeMatrix.identity(W.cols)).verified()


def witness_into_tensor(A: NonnegativeMatrix, W: NonnegativeMatrix, H: NonnegativeMatrix,
                        B: NonnegativeMatrix) -> RestrictionWitness:
    """A <= I_r (x) B for any nonzero B, from a factorization A = W H.

    Picks the first support cell (p, q) of B; then I_1 = e_p^T B e_q / B[p, q]
    and the factorization witness is tensored with that one.
    """
    p, q = next(((i, j) for i in range(B.rows) for j in range(B.cols) if B[i, j] > 0),
                (None, None))
    if p is None:
        raise DomainError("B must be nonzero")
    ep = NonnegativeMatrix([[1 / B[p, q] if i == p else 0 for i in range(B.rows)]], 1, B.rows)
    eq = NonnegativeMatrix([[1 if j == q else 0 for j in range(B.cols)]], 1, B.cols)
    one = NonnegativeMatrix([[1]])
    base = witness_from_factorization(A, W, H)
    pick = RestrictionWitness(ep, eq, one, B).verified()
    w = compose_witness_product(base, pick)
    # A (x) [[1]] is A itself, so the composed witness already binds A.
    return RestrictionWitness(w.left, w.right, A, w.rhs).verified()


def sample_witness(rng: random.Random, B: NonnegativeMatrix, m: int, n: int,
                   density: float = 0.6) -> RestrictionWitness:
    """Random X (m x rows(B)), Y (n x cols(B)) and the matrix they restrict B to."""
    X = random_matrix(rng, m, B.rows, density)
    Y = random_matrix(rng, n, B.cols, density)
    return RestrictionWitness(X, Y, X @ B @ Y.T, B)
