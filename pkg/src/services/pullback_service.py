"""
Pullback Service - Ranks of forgetful-chart pullback images.
"""

import logging
from typing import Any, Dict, List, Optional, Sequence, Tuple

from src.core import ValidationException
from src.services.executor import ordered_map
from src.stable.compare import image_rank, pullback_rank_csv, pullback_rank_table

logger = logging.getLogger(__name__)


def _image_cell(cell: Tuple[int, int, int]) -> Optional[int]:
    n, d, m = cell
    return image_rank(n, d, m) if n + m >= 3 else None


class PullbackService:
    """Service producing image-rank rows over an (n, d) x m grid."""

    def __init__(self, threads: Optional[int] = None):
        self.threads = threads

    def image_rank(self, n: int, d: int, m: int) -> int:
        """
        Rank of F_m^*(CH^d) on the stable space with n + m markings.

        Raises:
            ValidationException: If n + m < 3.
        """
        if n + m < 3:
            raise ValidationException(f"n + m must be >= 3, got n={n} m={m}", field="m")
        return image_rank(n, d, m)

    def table(self, pairs: Sequence[Tuple[int, int]], m_max: int) -> List[Dict[str, Any]]:
        """Rows {n, d, chow_rank, ranks, exact}; cells with n + m < 3 are None."""
        cells = [(n, d, m) for n, d in pairs for m in range(m_max + 1)]
        values = dict(zip(cells, ordered_map(_image_cell, cells, self.threads)))
        rows = pullback_rank_table(pairs, m_max, rank_of=lambda n, d, m: values[(n, d, m)])
        logger.info("pullback table for %d rows up to m=%d done", len(rows), m_max)
        return rows

    @staticmethod
    def table_csv(rows: Sequence[Dict[str, Any]]) -> str:
        return pullback_rank_csv(rows)

    @staticmethod
    def table_text(rows: Sequence[Dict[str, Any]]) -> str:
        """Plain-text rows; cells that are only lower bounds carry a '>=' prefix."""
        lines = []
        for row in rows:
            cells = []
            for x, exact in zip(row["ranks"], row["exact"]):
                cells.append("-" if x is None else (str(x) if exact else f">={x}"))
            lines.append(f"({row['n']},{row['d']}) CH={row['chow_rank']}: " + " ".join(cells))
        return "\n".join(lines) + "\n"
