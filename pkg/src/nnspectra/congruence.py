"""Deciders for congruence (A = M_r B M_c^T with monomial M_r, M_c) and
equivalence (congruence up to zero padding).

A nonnegative invertible matrix with nonnegative inverse is a permutation
times a positive diagonal, so congruence is a combinatorial question: match
the support graphs and check that the entry ratios admit row and column
scalings. Both deciders raise :class:`BudgetExceeded` ("unknown") rather than
answer False when the search gives up.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass
from fractions import Fraction

from .errors import BudgetExceeded, DomainError
from .matrix import NonnegativeMatrix, format_rational, monomial_matrix, strip_zero_lines

DEFAULT_SEARCH_BUDGET = 200_000


@dataclass(frozen=True)
class MonomialTransform:
    """Sends basis vector i to scales[i] * e_{permutation[i]}."""

    permutation: tuple[int, ...]
    scales: tuple[Fraction, ...]

    def __post_init__(self):
        if sorted(self.permutation) != list(range(len(self.permutation))):
            raise DomainError("permutation is not a bijection")
        if len(self.scales) != len(self.permutation) or any(s <= 0 for s in self.scales):
            raise DomainError("scales must be positive, one per index")

    @classmethod
    def identity(cls, n: int) -> "MonomialTransform":
        return cls(tuple(range(n)), (Fraction(1),) * n)

    def matrix(self) -> NonnegativeMatrix:
        return monomial_matrix(self.permutation, self.scales)

    def inverse(self) -> "MonomialTransform":
        n = len(self.permutation)
        perm = [0] * n
        scales = [Fraction(0)] * n
        for i, (p, s) in enumerate(zip(self.permutation, self.scales)):
            perm[p] = i
            scales[p] = 1 / s
        return MonomialTransform(tuple(perm), tuple(scales))

    def apply(self, A: NonnegativeMatrix, col: "MonomialTransform") -> NonnegativeMatrix:
        """self.matrix() @ A @ col.matrix().T"""
        return self.matrix() @ A @ col.matrix().T

    def to_json(self) -> dict:
        return {"permutation": list(self.permutation),
                "scales": [format_rational(s) for s in self.scales]}


@dataclass(frozen=True)
class CongruenceWitness:
    row: MonomialTransform
    col: MonomialTransform

    def holds(self, A: NonnegativeMatrix, B: NonnegativeMatrix) -> bool:
        return self.row.apply(A, self.col) == B

    def to_json(self) -> dict:
        return {"row": self.row.to_json(), "col": self.col.to_json()}


def _profiles(A: NonnegativeMatrix):
    m, n = A.shape
    row_nb = [[j for j in range(n) if A[i, j] > 0] for i in range(m)]
    col_nb = [[i for i in range(m) if A[i, j] > 0] for j in range(n)]
    row_sig = [(len(nb), tuple(sorted(len(col_nb[j]) for j in nb))) for nb in row_nb]
    col_sig = [(len(nb), tuple(sorted(len(row_nb[i]) for i in nb))) for nb in col_nb]
    return row_nb, col_nb, row_sig, col_sig


def is_congruent(A: NonnegativeMatrix, B: NonnegativeMatrix,
                 budget: int = DEFAULT_SEARCH_BUDGET) -> CongruenceWitness | None:
    """Monomial witness (M_r, M_c) with M_r A M_c^T == B, or None.

    Vertices of A's support graph are visited in BFS order; each is mapped to
    an unused vertex of B with the same degree signature, and its scale is
    forced by the edge to its BFS parent. Every edge and non-edge to already
    mapped vertices is checked before going deeper.
    """
    if A.shape != B.shape:
        return None
    m, n = A.shape
    a_rnb, a_cnb, a_rsig, a_csig = _profiles(A)
    b_rnb, b_cnb, b_rsig, b_csig = _profiles(B)
    if Counter(a_rsig) != Counter(b_rsig) or Counter(a_csig) != Counter(b_csig):
        return None

    # BFS order over A's vertices: ('r', i) / ('c', j), with the parent edge
    order: list[tuple[str, int, tuple | None]] = []
    seen_r = [False] * m
    seen_c = [False] * n
    for start in range(m):
        if seen_r[start] or not a_rnb[start]:
            continue
        seen_r[start] = True
        queue = deque([("r", start, None)])
        while queue:
            kind, v, par = queue.popleft()
            order.append((kind, v, par))
            if kind == "r":
                for j in a_rnb[v]:
                    if not seen_c[j]:
                        seen_c[j] = True
                        queue.append(("c", j, v))
            else:
                for i in a_cnb[v]:
                    if not seen_r[i]:
                        seen_r[i] = True
                        queue.append(("r", i, v))
    iso_r = [i for i in range(m) if not a_rnb[i]]
    iso_c = [j for j in range(n) if not a_cnb[j]]

    rmap = [-1] * m
    cmap = [-1] * n
    rscale: list[Fraction | None] = [None] * m
    cscale: list[Fraction | None] = [None] * n
    used_r = [False] * m
    used_c = [False] * n
    mapped_r: list[int] = []
    mapped_c: list[int] = []
    nodes = 0

    def try_row(i, s, par) -> Fraction | None:
        if par is None:
            scale = Fraction(1)
        else:
            b = B[s, cmap[par]]
            if b == 0:
                return None
            scale = b / (A[i, par] * cscale[par])
        for j in mapped_c:
            a = A[i, j]
            b = B[s, cmap[j]]
            if (a == 0) != (b == 0):
                return None
            if a and scale * a * cscale[j] != b:
                return None
        return scale

    def try_col(j, t, par) -> Fraction | None:
        if par is None:
            scale = Fraction(1)
        else:
            b = B[rmap[par], t]
            if b == 0:
                return None
            scale = b / (A[par, j] * rscale[par])
        for i in mapped_r:
            a = A[i, j]
            b = B[rmap[i], t]
            if (a == 0) != (b == 0):
                return None
            if a and rscale[i] * a * scale != b:
                return None
        return scale

    def search(k: int) -> bool:
        nonlocal nodes
        if k == len(order):
            return True
        nodes += 1
        if nodes > budget:
            raise BudgetExceeded(f"congruence search exceeded {budget} nodes")
        kind, v, par = order[k]
        if kind == "r":
            pool = b_cnb[cmap[par]] if par is not None else range(m)
            for s in pool:
                if used_r[s] or b_rsig[s] != a_rsig[v]:
                    continue
                scale = try_row(v, s, par)
                if scale is None:
                    continue
                rmap[v], rscale[v], used_r[s] = s, scale, True
                mapped_r.append(v)
                if search(k + 1):
                    return True
                mapped_r.pop()
                rmap[v], rscale[v], used_r[s] = -1, None, False
        else:
            pool = b_rnb[rmap[par]]
            for t in pool:
                if used_c[t] or b_csig[t] != a_csig[v]:
                    continue
                scale = try_col(v, t, par)
                if scale is None:
                    continue
                cmap[v], cscale[v], used_c[t] = t, scale, True
                mapped_c.append(v)
                if search(k + 1):
                    return True
                mapped_c.pop()
                cmap[v], cscale[v], used_c[t] = -1, None, False
        return False

    if not search(0):
        return None
    free_r = [s for s in range(m) if not used_r[s]]
    free_c = [t for t in range(n) if not used_c[t]]
    for i, s in zip(iso_r, free_r):
        rmap[i], rscale[i] = s, Fraction(1)
    for j, t in zip(iso_c, free_c):
        cmap[j], cscale[j] = t, Fraction(1)
    witness = CongruenceWitness(MonomialTransform(tuple(rmap), tuple(rscale)),
                                MonomialTransform(tuple(cmap), tuple(cscale)))
    if not witness.holds(A, B):
        raise AssertionError("congruence witness failed verification")
    return witness


def is_equivalent(A: NonnegativeMatrix, B: NonnegativeMatrix,
                  budget: int = DEFAULT_SEARCH_BUDGET) -> bool:
    """Congruence after zero rows and columns are stripped from both sides."""
    core_a, _, _ = strip_zero_lines(A)
    core_b, _, _ = strip_zero_lines(B)
    if core_a.shape == (0, 0) or core_b.shape == (0, 0):
        return core_a.shape == core_b.shape
    return is_congruent(core_a, core_b, budget) is not None


def commutation_witness(blocks: int, A: NonnegativeMatrix) -> CongruenceWitness:
    """Permutation taking (I_k (x) A) (x) (I_k (x) A) to I_{k*k} (x) (A (x) A).

    With A (+) A = I_2 (x) A this is the identity (A (+) A)^(x2) ~= four
    copies of A^(x2), used in the duality argument.
    """
    def perm(size: int) -> tuple[int, ...]:
        out = [0] * (blocks * size * blocks * size)
        for a in range(blocks):
            for i in range(size):
                for b in range(blocks):
                    for k in range(size):
                        src = ((a * size + i) * blocks + b) * size + k
                        out[src] = ((a * blocks + b) * size + i) * size + k
        return tuple(out)

    rp, cp = perm(A.rows), perm(A.cols)
    return CongruenceWitness(MonomialTransform(rp, (Fraction(1),) * len(rp)),
                             MonomialTransform(cp, (Fraction(1),) * len(cp)))
