"""
Enumeration of genus-0 prestable graphs up to isomorphism.

Graphs with p edges and no legs are grown from (p-1)-edge graphs by leaf
attachment; legs are then added one marking at a time. Each stage is
deduplicated by canonical key and memoized.
"""

import logging
from functools import lru_cache
from typing import Dict, Tuple

from src.graphs.canonical import canonicalize
from src.graphs.prestable import PrestableGraph
from src.graphs.surgery import add_leg, attach_leaf

logger = logging.getLogger(__name__)


@lru_cache(maxsize=None)
def enumerate_graphs(n: int, p: int) -> Tuple[PrestableGraph, ...]:
    """
    All genus-0 trees with n markings and p edges, one per isomorphism class.

    Args:
        n: Number of markings.
        p: Number of edges.

    Returns:
        Canonical representatives sorted by canonical key.
    """
    if n < 0 or p < 0:
        return ()
    if n == 0 and p == 0:
        return (canonicalize(PrestableGraph.trivial(0)).graph,)

    found: Dict[bytes, PrestableGraph] = {}
    if n == 0:
        for seed in enumerate_graphs(0, p - 1):
            for v in range(seed.num_vertices):
                form = canonicalize(attach_leaf(seed, v))
                found.setdefault(form.key, form.graph)
    else:
        for seed in enumerate_graphs(n - 1, p):
            for v in range(seed.num_vertices):
                form = canonicalize(add_leg(seed, v)[0])
                found.setdefault(form.key, form.graph)

    graphs = tuple(found[key] for key in sorted(found))
    logger.debug("enumerate_graphs(n=%d, p=%d): %d classes", n, p, len(graphs))
    return graphs


def enumerate_stable_graphs(n: int, p: int) -> Tuple[PrestableGraph, ...]:
    """Stable members of enumerate_graphs(n, p)."""
    return tuple(g for g in enumerate_graphs(n, p) if g.is_stable())
