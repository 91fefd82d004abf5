"""
Dense fraction-free elimination.

Used for narrow matrices and as the reference implementation the sparse
routines are tested against.
"""

from fractions import Fraction
from math import lcm
from typing import Any, List, Sequence


def integer_rows(rows: Sequence[Sequence[Any]]) -> List[List[int]]:
    """Scale each rational row by the lcm of its denominators."""
    result = []
    for row in rows:
        values = [Fraction(x) for x in row]
        scale = lcm(*(x.denominator for x in values)) if values else 1
        result.append([int(x * scale) for x in values])
    return result


def bareiss_rank(rows: Sequence[Sequence[Any]]) -> int:
    """
    Exact rank of a dense rational matrix by Bareiss elimination.

    Args:
        rows: Matrix rows (ints or Fractions).

    Returns:
        The rank over the rationals.
    """
    a = integer_rows(rows)
    if not a:
        return 0
    num_rows, num_cols = len(a), len(a[0])
    rank = 0
    previous = 1
    for c in range(num_cols):
        pivot = next((i for i in range(rank, num_rows) if a[i][c] != 0), None)
        if pivot is None:
            continue
        a[rank], a[pivot] = a[pivot], a[rank]
        top = a[rank]
        for i in range(rank + 1, num_rows):
            row = a[i]
            factor = row[c]
            for j in range(c + 1, num_cols):
                row[j] = (top[c] * row[j] - factor * top[j]) // previous
            row[c] = 0
        previous = top[c]
        rank += 1
        if rank == num_rows:
            break
    return rank


def rref(rows: Sequence[Sequence[Any]], num_cols: int) -> List[List[Fraction]]:
    """Reduced row echelon form over the rationals (zero rows removed)."""
    a = [[Fraction(x) for x in row] for row in rows]
    r = 0
    for c in range(num_cols):
        pivot = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
    return a[:r]
