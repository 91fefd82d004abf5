"""
Hilbert Service - Hilbert coefficients of open substacks.
"""

import logging
from typing import Any, Dict, List

from src.strata.hilbert import hilbert_coefficients
from src.strata.substacks import get_spec_registry, resolve_spec

logger = logging.getLogger(__name__)


class HilbertService:
    """Service returning the coefficients h_0..h_D of a named substack."""

    def coefficients(self, n: int, spec: str = "all", d_max: int = 8) -> List[int]:
        """
        Hilbert coefficients of the open substack named by spec.

        Raises:
            SubstackException: If the spec name does not resolve.
        """
        resolved = resolve_spec(spec)
        values = hilbert_coefficients(n, resolved, d_max)
        logger.info("hilbert n=%d spec=%s d_max=%d: %s", n, spec, d_max, values)
        return values

    def series(self, n: int, spec: str = "all", d_max: int = 8) -> Dict[str, Any]:
        return {"n": n, "spec": spec, "coefficients": self.coefficients(n, spec, d_max)}

    @staticmethod
    def available_specs() -> List[str]:
        return get_spec_registry().list_names()
