"""
Executor helper shared by the services.

Grid cells are independent, so they are fanned out over a process pool when
more than one worker is configured. Results keep the input order.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, List, Sequence, TypeVar

from src.core.config import get_settings

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def ordered_map(fn: Callable[[T], R], items: Sequence[T], threads: int = None) -> List[R]:
    """
    Apply fn to every item, in parallel when threads > 1.

    Args:
        fn: A picklable top-level function.
        items: Inputs.
        threads: Worker upper bound; defaults to the configured value.

    Returns:
        Results in the order of items.
    """
    workers = min(threads or get_settings().threads, len(items))
    if workers <= 1:
        return [fn(item) for item in items]
    logger.debug("running %d cells on %d workers", len(items), workers)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))
