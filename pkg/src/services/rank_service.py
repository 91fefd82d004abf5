"""
Rank Service - Chow rank tables of the prestable stack and its open substacks.
"""

import csv
import io
import logging
from typing import List, Optional, Tuple

from src.relations.export import relation_matrix_dict
from src.relations.ranks import chow_rank
from src.services.executor import ordered_map
from src.strata.substacks import resolve_spec

logger = logging.getLogger(__name__)


def _rank_cell(cell: Tuple[int, int, str]) -> int:
    n, d, spec_name = cell
    return chow_rank(n, d, resolve_spec(spec_name))


class RankService:
    """Service computing rank grids with rows indexed by degree and columns by n."""

    def __init__(self, threads: Optional[int] = None):
        self.threads = threads

    def rank(self, n: int, d: int, spec: str = "all") -> int:
        """
        Rank of CH^d of the named substack.

        Raises:
            SubstackException: If the spec name does not resolve.
        """
        return chow_rank(n, d, resolve_spec(spec))

    def rank_table(self, n_max: int, d_max: int, spec: str = "all", n_min: int = 0, d_min: int = 0) -> List[List[int]]:
        """
        Ranks for d in d_min..d_max (rows) and n in n_min..n_max (columns).

        Raises:
            SubstackException: If the spec name does not resolve.
        """
        resolve_spec(spec)
        cells = [(n, d, spec) for d in range(d_min, d_max + 1) for n in range(n_min, n_max + 1)]
        values = ordered_map(_rank_cell, cells, self.threads)
        width = n_max - n_min + 1
        table = [values[i : i + width] for i in range(0, len(values), width)]
        logger.info("rank table n<=%d d<=%d spec=%s done", n_max, d_max, spec)
        return table

    @staticmethod
    def table_csv(table: List[List[int]], n_min: int = 0, d_min: int = 0) -> str:
        """CSV with a header row of n values and one row per degree."""
        width = max((len(row) for row in table), default=0)
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["d"] + [f"n={n_min + j}" for j in range(width)])
        for i, row in enumerate(table):
            writer.writerow([d_min + i] + list(row))
        return buffer.getvalue()

    @staticmethod
    def table_text(table: List[List[int]], n_min: int = 0, d_min: int = 0) -> str:
        """Right-aligned plain-text grid."""
        width = max((len(row) for row in table), default=0)
        cell = max([len(str(x)) for row in table for x in row] + [len(f"n={n_min + width - 1}"), 3])
        lines = ["d".rjust(3) + " " + " ".join(f"n={n_min + j}".rjust(cell) for j in range(width))]
        for i, row in enumerate(table):
            lines.append(str(d_min + i).rjust(3) + " " + " ".join(str(x).rjust(cell) for x in row))
        return "\n".join(lines) + "\n"

    def relation_matrix(self, n: int, d: int, spec: str = "all") -> dict:
        """Basis size, relation count and sparse entries of one relation matrix."""
        return relation_matrix_dict(n, d, resolve_spec(spec))
