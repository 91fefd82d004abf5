"""
Verification Service - Runs the registered identity checks.
"""

import logging
from typing import Any, Dict, List, Optional

from src.checks import CheckResult, get_registry, register_default_checks

logger = logging.getLogger(__name__)


class VerificationService:
    """Service wrapping the global check registry."""

    def __init__(self):
        register_default_checks()
        self.registry = get_registry()

    def list_checks(self) -> Dict[str, str]:
        """Check names mapped to their descriptions."""
        return self.registry.get_registry_info()["descriptions"]

    def run(self, only: Optional[List[str]] = None) -> List[CheckResult]:
        """
        Run the selected checks, or the whole suite.

        Raises:
            RegistryException: If a selected name is unknown.
        """
        results = self.registry.run(only)
        failed = [r.name for r in results if not r.passed]
        if failed:
            logger.warning("verification failed: %s", ", ".join(failed))
        else:
            logger.info("verification passed: %d checks", len(results))
        return results

    @staticmethod
    def summary(results: List[CheckResult]) -> Dict[str, Any]:
        return {
            "passed": all(r.passed for r in results),
            "results": [r.to_dict() for r in results],
        }
