"""
Logging helpers.

Library modules only call logging.getLogger(__name__); the CLI and the API
entry point install the stderr handler once through configure_logging.
"""

import logging
import sys
from typing import Iterable, Optional, TypeVar

from tqdm import tqdm

from src.core.config import get_settings

T = TypeVar("T")

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


def configure_logging(level: Optional[str] = None) -> None:
    """
    Install a stderr handler on the root logger.

    Args:
        level: Log level name; defaults to the configured settings value.
    """
    level_name = (level or get_settings().log_level).upper()
    logging.basicConfig(
        level=getattr(logging, level_name, logging.WARNING),
        format=LOG_FORMAT,
        stream=sys.stderr,
        force=True,
    )


def progress(iterable: Iterable[T], desc: str, total: Optional[int] = None) -> Iterable[T]:
    """
    Wrap an iterable in a stderr progress bar when enabled.

    Args:
        iterable: Items to iterate.
        desc: Bar label.
        total: Optional length hint.

    Returns:
        The iterable, possibly wrapped by tqdm.
    """
    enabled = get_settings().progress and sys.stderr.isatty()
    return tqdm(iterable, desc=desc, total=total, file=sys.stderr, disable=not enabled, leave=False)
