"""
Sparse exact linear algebra over the rationals.

Rows are dicts column -> Fraction. Rank and span membership use an
incremental fraction-free echelon form over the integers: each incoming
row is cleared to a primitive integer vector and reduced against the
stored pivot rows by its smallest column.
"""

import logging
from fractions import Fraction
from math import gcd, lcm
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence

from src.core import DimensionException
from src.linalg.dense import bareiss_rank, rref

logger = logging.getLogger(__name__)

DENSE_COLUMN_LIMIT = 64
MODULAR_PRIME = 2_147_483_647

IntRow = Dict[int, int]


class SparseRationalMatrix:
    """Row-sparse exact rational matrix with no stored zeros."""

    def __init__(self, num_cols: int, rows: Optional[Iterable[Mapping[int, Any]]] = None):
        self.num_cols = num_cols
        self.rows: List[Dict[int, Fraction]] = []
        for row in rows or ():
            self.append_row(row)

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence[Any]]) -> "SparseRationalMatrix":
        num_cols = len(rows[0]) if rows else 0
        return cls(num_cols, ({j: x for j, x in enumerate(row) if x} for row in rows))

    @property
    def num_rows(self) -> int:
        return len(self.rows)

    def append_row(self, row: Mapping[int, Any]) -> None:
        """
        Append a sparse row.

        Raises:
            DimensionException: If a column index is out of range.
        """
        clean = {}
        for j, x in row.items():
            if not 0 <= j < self.num_cols:
                raise DimensionException(f"column {j} outside 0..{self.num_cols - 1}")
            value = Fraction(x)
            if value:
                clean[j] = value
        self.rows.append(clean)

    def transpose(self) -> "SparseRationalMatrix":
        columns: List[Dict[int, Fraction]] = [{} for _ in range(self.num_cols)]
        for i, row in enumerate(self.rows):
            for j, x in row.items():
                columns[j][i] = x
        return SparseRationalMatrix(self.num_rows, columns)

    def to_dense(self) -> List[List[Fraction]]:
        return [[row.get(j, Fraction(0)) for j in range(self.num_cols)] for row in self.rows]

    def nnz(self) -> int:
        return sum(len(row) for row in self.rows)

    def to_matrix_market(self) -> str:
        """Coordinate text, 1-based, one 'row col p/q' entry per line."""
        lines = [
            "%%MatrixMarket matrix coordinate rational general",
            f"{self.num_rows} {self.num_cols} {self.nnz()}",
        ]
        for i, row in enumerate(self.rows):
            for j in sorted(row):
                x = row[j]
                lines.append(f"{i + 1} {j + 1} {x.numerator}/{x.denominator}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_matrix_market(cls, text: str) -> "SparseRationalMatrix":
        """
        Parse the coordinate text written by to_matrix_market.

        Raises:
            DimensionException: On malformed headers or out-of-range entries.
        """
        lines = [line for line in text.splitlines() if line.strip() and not line.startswith("%")]
        if not lines:
            raise DimensionException("empty matrix text")
        try:
            num_rows, num_cols, _ = (int(x) for x in lines[0].split())
        except ValueError:
            raise DimensionException(f"bad size line '{lines[0]}'")
        rows: List[Dict[int, Fraction]] = [{} for _ in range(num_rows)]
        for line in lines[1:]:
            i, j, value = line.split()
            r, c = int(i) - 1, int(j) - 1
            if not (0 <= r < num_rows and 0 <= c < num_cols):
                raise DimensionException(f"entry ({i}, {j}) outside {num_rows}x{num_cols}")
            rows[r][c] = Fraction(value)
        return cls(num_cols, rows)

    def __repr__(self) -> str:
        return f"SparseRationalMatrix({self.num_rows}x{self.num_cols}, nnz={self.nnz()})"


def _primitive(row: Mapping[int, Fraction]) -> IntRow:
    if not row:
        return {}
    scale = lcm(*(x.denominator for x in row.values()))
    return _primitive_int({j: int(x * scale) for j, x in row.items()})


def _primitive_int(ints: IntRow) -> IntRow:
    if not ints:
        return {}
    content = 0
    for x in ints.values():
        content = gcd(content, x)
    lead = ints[min(ints)]
    if lead < 0:
        content = -content
    return {j: x // content for j, x in ints.items()}


class EchelonForm:
    """
    Incremental fraction-free echelon form.

    Pivot rows are primitive integer vectors indexed by their smallest column.
    """

    def __init__(self, num_cols: int):
        self.num_cols = num_cols
        self.pivots: Dict[int, IntRow] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, row: Mapping[int, Any]) -> IntRow:
        """Reduce a row against the pivots; empty result means it is in the span."""
        for j in row:
            if not 0 <= j < self.num_cols:
                raise DimensionException(f"column {j} outside 0..{self.num_cols - 1}")
        current = _primitive({j: Fraction(x) for j, x in row.items() if x})
        while current:
            c = min(current)
            pivot = self.pivots.get(c)
            if pivot is None:
                return current
            a, b = pivot[c], current[c]
            merged: Dict[int, int] = {j: a * x for j, x in current.items()}
            for j, x in pivot.items():
                value = merged.get(j, 0) - b * x
                if value:
                    merged[j] = value
                else:
                    merged.pop(j, None)
            current = _primitive_int(merged)
        return current

    def add(self, row: Mapping[int, Any]) -> bool:
        """Insert a row; returns True when it increased the rank."""
        reduced = self.reduce(row)
        if not reduced:
            return False
        self.pivots[min(reduced)] = reduced
        return True

    def contains(self, row: Mapping[int, Any]) -> bool:
        return not self.reduce(row)


def modular_rank(m: SparseRationalMatrix, prime: int = MODULAR_PRIME) -> int:
    """
    Rank of m reduced modulo a prime (rows with a denominator divisible by
    the prime are skipped). Never exceeds the rational rank.
    """
    pivots: Dict[int, Dict[int, int]] = {}
    for row in m.rows:
        if any(x.denominator % prime == 0 for x in row.values()):
            continue
        current = {j: x.numerator * pow(x.denominator, -1, prime) % prime for j, x in row.items()}
        current = {j: x for j, x in current.items() if x}
        while current:
            c = min(current)
            pivot = pivots.get(c)
            if pivot is None:
                inv = pow(current[c], -1, prime)
                pivots[c] = {j: x * inv % prime for j, x in current.items()}
                break
            f = current[c]
            for j, x in pivot.items():
                value = (current.get(j, 0) - f * x) % prime
                if value:
                    current[j] = value
                else:
                    current.pop(j, None)
    return len(pivots)


def rank(m: SparseRationalMatrix) -> int:
    """
    Exact rank over the rationals.

    Narrow matrices go through dense Bareiss elimination. Otherwise a modular
    rank equal to min(rows, cols) certifies full rank; failing that, rows are
    inserted sparsest first into an EchelonForm.
    """
    if not m.rows or m.num_cols == 0:
        return 0
    if m.num_cols <= DENSE_COLUMN_LIMIT:
        return bareiss_rank(m.to_dense())
    bound = min(m.num_rows, m.num_cols)
    if modular_rank(m) == bound:
        logger.debug("rank %s certified full by modular pass", m)
        return bound
    echelon = EchelonForm(m.num_cols)
    for row in sorted(m.rows, key=len):
        echelon.add(row)
        if echelon.rank == m.num_cols:
            break
    logger.debug("rank %s = %d", m, echelon.rank)
    return echelon.rank


def in_row_span(m: SparseRationalMatrix, v: Mapping[int, Any]) -> bool:
    """
    True iff v lies in the row span of m.

    Raises:
        DimensionException: If v has entries beyond m's columns.
    """
    echelon = EchelonForm(m.num_cols)
    for row in m.rows:
        echelon.add(row)
    return echelon.contains(v)


def kernel_basis(m: SparseRationalMatrix) -> List[Dict[int, Fraction]]:
    """Right-kernel basis: sparse vectors k with m k = 0, cols - rank of them."""
    reduced = rref(m.to_dense(), m.num_cols)
    pivot_cols = []
    for row in reduced:
        pivot_cols.append(next(j for j, x in enumerate(row) if x != 0))
    free = [j for j in range(m.num_cols) if j not in set(pivot_cols)]
    basis = []
    for f in free:
        vector = {f: Fraction(1)}
        for row, p in zip(reduced, pivot_cols):
            if row[f]:
                vector[p] = -row[f]
        basis.append(vector)
    return basis


def multiply(m: SparseRationalMatrix, v: Mapping[int, Any]) -> List[Fraction]:
    """Matrix-vector product m v."""
    return [sum((x * Fraction(v.get(j, 0)) for j, x in row.items()), Fraction(0)) for row in m.rows]
