"""Exact nonnegative rational matrices and their semiring operations.

Entries are stored as :class:`fractions.Fraction`. Matrices are immutable;
every operation returns a new matrix. Indices are 0-based.
"""

from __future__ import annotations

import csv
import io
import json
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import BudgetExceeded, DomainError, MatrixParseError

DEFAULT_CELL_BUDGET = 5_000_000

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*([+-]?\d+)\s*)?$")


def parse_rational(value) -> Fraction:
    """Convert an int, Fraction or ``"p/q"`` / ``"p"`` string to a Fraction.

    Floats are rejected: they would smuggle rounding into exact data.
    """
    if isinstance(value, bool):
        raise MatrixParseError(f"boolean is not a matrix entry: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        m = _RATIONAL_RE.match(value)
        if not m:
            raise MatrixParseError(f"cannot parse rational from {value!r}")
        num = int(m.group(1))
        den = int(m.group(2)) if m.group(2) is not None else 1
        if den == 0:
            raise DomainError(f"zero denominator in {value!r}")
        return Fraction(num, den)
    raise MatrixParseError(f"unsupported entry type {type(value).__name__}")


def format_rational(q: Fraction) -> str:
    """Reduced ``"p/q"`` string, or a bare integer string when q == 1."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


class NonnegativeMatrix:
    """Dense m x n matrix of nonnegative rationals.

    The 0 x 0 matrix is allowed; it stands for the class of all zero matrices.
    """

    __slots__ = ("_rows", "_cols", "_data", "_hash")

    def __init__(self, entries: Iterable[Iterable], rows: int | None = None,
                 cols: int | None = None):
        data = tuple(tuple(parse_rational(x) for x in row) for row in entries)
        m = len(data) if rows is None else rows
        if cols is None:
            n = len(data[0]) if data else 0
        else:
            n = cols
        if len(data) != m:
            raise MatrixParseError(f"expected {m} rows, got {len(data)}")
        for i, row in enumerate(data):
            if len(row) != n:
                raise MatrixParseError(
                    f"row {i} has {len(row)} entries, expected {n}")
            for j, x in enumerate(row):
                if x < 0:
                    raise DomainError(f"negative entry {x} at ({i}, {j})")
        self._rows = m
        self._cols = n
        self._data = data
        self._hash = None

    @classmethod
    def _trusted(cls, data: tuple, rows: int, cols: int) -> "NonnegativeMatrix":
        # Skips validation; data must already be a tuple of Fraction tuples.
        obj = cls.__new__(cls)
        obj._rows = rows
        obj._cols = cols
        obj._data = data
        obj._hash = None
        return obj

    @classmethod
    def identity(cls, n: int) -> "NonnegativeMatrix":
        one, zero = Fraction(1), Fraction(0)
        data = tuple(tuple(one if i == j else zero for j in range(n))
                     for i in range(n))
        return cls._trusted(data, n, n)

    @classmethod
    def zeros(cls, m: int, n: int) -> "NonnegativeMatrix":
        zero = Fraction(0)
        return cls._trusted(tuple((zero,) * n for _ in range(m)), m, n)

    @classmethod
    def empty(cls) -> "NonnegativeMatrix":
        return cls._trusted((), 0, 0)

    @property
    def rows(self) -> int:
        return self._rows

    @property
    def cols(self) -> int:
        return self._cols

    @property
    def shape(self) -> tuple[int, int]:
        return (self._rows, self._cols)

    @property
    def entries(self) -> tuple[tuple[Fraction, ...], ...]:
        return self._data

    def __getitem__(self, idx: tuple[int, int]) -> Fraction:
        i, j = idx
        return self._data[i][j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self._data[i]

    def col(self, j: int) -> tuple[Fraction, ...]:
        return tuple(r[j] for r in self._data)

    def __eq__(self, other) -> bool:
        if not isinstance(other, NonnegativeMatrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._rows, self._cols, self._data))
        return self._hash

    def __repr__(self) -> str:
        body = [[format_rational(x) for x in r] for r in self._data]
        return f"NonnegativeMatrix({body})"

    def __matmul__(self, other: "NonnegativeMatrix") -> "NonnegativeMatrix":
        return matmul(self, other)

    @property
    def T(self) -> "NonnegativeMatrix":
        return self.transpose()

    def transpose(self) -> "NonnegativeMatrix":
        data = tuple(zip(*self._data)) if self._rows and self._cols else ()
        if not data:
            data = tuple(() for _ in range(self._cols))
        return NonnegativeMatrix._trusted(data, self._cols, self._rows)

    def is_zero(self) -> bool:
        return all(x == 0 for r in self._data for x in r)

    def nnz(self) -> int:
        return sum(1 for r in self._data for x in r if x > 0)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "NonnegativeMatrix":
        data = tuple(tuple(self._data[i][j] for j in cols) for i in rows)
        return NonnegativeMatrix._trusted(data, len(rows), len(cols))

    def to_lists(self) -> list[list[Fraction]]:
        return [list(r) for r in self._data]

    def to_strings(self) -> list[list[str]]:
        return [[format_rational(x) for x in r] for r in self._data]


@dataclass(frozen=True)
class SupportPattern:
    """The cells {(i, j) : A[i, j] > 0}, also read as a bipartite graph."""

    rows: int
    cols: int
    cells: frozenset

    def __post_init__(self):
        for i, j in self.cells:
            if not (0 <= i < self.rows and 0 <= j < self.cols):
                raise DomainError(f"cell {(i, j)} outside {self.rows}x{self.cols}")

    def __len__(self) -> int:
        return len(self.cells)

    def __contains__(self, cell) -> bool:
        return cell in self.cells

    def sorted_cells(self) -> list[tuple[int, int]]:
        return sorted(self.cells)

    def row_masks(self) -> list[int]:
        """Bitmask of support columns for each row."""
        masks = [0] * self.rows
        for i, j in self.cells:
            masks[i] |= 1 << j
        return masks

    def col_masks(self) -> list[int]:
        """Bitmask of support rows for each column."""
        masks = [0] * self.cols
        for i, j in self.cells:
            masks[j] |= 1 << i
        return masks

    def to_matrix(self) -> NonnegativeMatrix:
        one, zero = Fraction(1), Fraction(0)
        data = tuple(tuple(one if (i, j) in self.cells else zero
                           for j in range(self.cols)) for i in range(self.rows))
        return NonnegativeMatrix._trusted(data, self.rows, self.cols)


def support(A: NonnegativeMatrix) -> SupportPattern:
    cells = frozenset((i, j) for i, r in enumerate(A.entries)
                      for j, x in enumerate(r) if x > 0)
    return SupportPattern(A.rows, A.cols, cells)


def matmul(A: NonnegativeMatrix, B: NonnegativeMatrix) -> NonnegativeMatrix:
    if A.cols != B.rows:
        raise DomainError(f"cannot multiply {A.shape} by {B.shape}")
    bt = B.transpose().entries
    zero = Fraction(0)
    data = tuple(
        tuple(sum((a * b for a, b in zip(r, c) if a and b), zero) for c in bt)
        if B.cols else ()
        for r in A.entries)
    return NonnegativeMatrix._trusted(data, A.rows, B.cols)


def direct_sum(A: NonnegativeMatrix, B: NonnegativeMatrix) -> NonnegativeMatrix:
    """Block-diagonal matrix with A top-left and B bottom-right."""
    zero = Fraction(0)
    pad_a = (zero,) * B.cols
    pad_b = (zero,) * A.cols
    data = tuple(r + pad_a for r in A.entries) + tuple(pad_b + r for r in B.entries)
    return NonnegativeMatrix._trusted(data, A.rows + B.rows, A.cols + B.cols)


def kronecker(A: NonnegativeMatrix, B: NonnegativeMatrix) -> NonnegativeMatrix:
    """Block (i, j) of the result is A[i, j] * B."""
    data = tuple(
        tuple(a * b for a in ra for b in rb)
        for ra in A.entries for rb in B.entries)
    return NonnegativeMatrix._trusted(data, A.rows * B.rows, A.cols * B.cols)


def kron_power(A: NonnegativeMatrix, n: int,
               budget: int = DEFAULT_CELL_BUDGET) -> NonnegativeMatrix:
    if n < 1:
        raise DomainError(f"kron_power needs n >= 1, got {n}")
    cells = (A.rows * A.cols) ** n
    if cells > budget:
        raise BudgetExceeded(
            f"A^(x{n}) would have {cells} cells, budget is {budget}")
    result = A
    for _ in range(n - 1):
        result = kronecker(result, A)
    return result


def strip_zero_lines(A: NonnegativeMatrix) -> tuple[NonnegativeMatrix, list[int], list[int]]:
    """Drop all-zero rows and columns; a zero matrix strips to 0 x 0."""
    kept_rows = [i for i in range(A.rows) if any(x > 0 for x in A.row(i))]
    kept_cols = [j for j in range(A.cols) if any(A[i, j] > 0 for i in range(A.rows))]
    if not kept_rows:
        return NonnegativeMatrix.empty(), [], []
    return A.submatrix(kept_rows, kept_cols), kept_rows, kept_cols


def monomial_matrix(perm: Sequence[int], scales: Sequence[Fraction]) -> NonnegativeMatrix:
    """Matrix M with M[perm[i], i] = scales[i]."""
    n = len(perm)
    zero = Fraction(0)
    data = [[zero] * n for _ in range(n)]
    for i, (p, s) in enumerate(zip(perm, scales)):
        data[p][i] = Fraction(s)
    return NonnegativeMatrix._trusted(tuple(map(tuple, data)), n, n)


# --- I/O -------------------------------------------------------------------

def parse_matrix(text: str, format: str = "json") -> NonnegativeMatrix:
    """Parse a matrix from JSON or CSV text.

    JSON layout: ``{"rows": m, "cols": n, "entries": [[...], ...]}``.
    CSV: one row per line, comma-separated cells. Cells are integers or
    ``"p/q"`` strings in both formats.
    """
    if format == "json":
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise MatrixParseError(f"invalid JSON: {exc}") from exc
        if not isinstance(obj, dict) or "entries" not in obj:
            raise MatrixParseError("JSON matrix must be an object with 'entries'")
        entries = obj["entries"]
        if not isinstance(entries, list) or not all(isinstance(r, list) for r in entries):
            raise MatrixParseError("'entries' must be a list of lists")
        rows = obj.get("rows", len(entries))
        cols = obj.get("cols", len(entries[0]) if entries else 0)
        if not isinstance(rows, int) or not isinstance(cols, int) or rows < 1 or cols < 1:
            raise MatrixParseError("'rows' and 'cols' must be positive integers")
        return NonnegativeMatrix(entries, rows, cols)
    if format == "csv":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if not lines:
            raise MatrixParseError("empty CSV matrix")
        grid = [[cell.strip() for cell in row] for row in csv.reader(lines)]
        width = len(grid[0])
        if any(len(r) != width for r in grid):
            raise MatrixParseError("ragged CSV rows")
        return NonnegativeMatrix(grid)
    raise MatrixParseError(f"unknown format {format!r}")


def matrix_to_json_obj(A: NonnegativeMatrix) -> dict:
    return {"rows": A.rows, "cols": A.cols, "entries": A.to_strings()}


def format_matrix(A: NonnegativeMatrix, format: str = "json") -> str:
    if format == "json":
        return json.dumps(matrix_to_json_obj(A))
    if format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerows(A.to_strings())
        return buf.getvalue()
    raise MatrixParseError(f"unknown format {format!r}")
