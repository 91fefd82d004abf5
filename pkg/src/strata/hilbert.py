"""
Hilbert coefficients of open substacks.
"""

import logging
from typing import List, Optional

from src.strata.substacks import AllGraphs, SubstackSpec

logger = logging.getLogger(__name__)


def hilbert_coefficients(n: int, spec: Optional[SubstackSpec] = None, max_degree: int = 8) -> List[int]:
    """
    Ranks h_0..h_D of the Chow groups of the open substack spec.

    Args:
        n: Number of markings.
        spec: Contraction-closed substack (default: all graphs).
        max_degree: Largest codimension D.

    Returns:
        The list [h_0, ..., h_D].
    """
    from src.relations.ranks import chow_rank

    spec = spec or AllGraphs()
    coefficients = [chow_rank(n, d, spec) for d in range(max_degree + 1)]
    logger.debug("hilbert n=%d spec=%s: %s", n, spec.name, coefficients)
    return coefficients
