"""
Base check interface and result type.

Defines the contract that all identity checks must implement.
"""

import logging
import time
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Any, Dict, Iterator, List, Tuple

from src.core import ChowException

logger = logging.getLogger(__name__)


@dataclass
class CheckResult:
    """Outcome of one check."""

    name: str
    passed: bool
    cases: int = 0
    failures: List[str] = field(default_factory=list)
    elapsed: float = 0.0

    def to_dict(self) -> Dict[str, Any]:
        """Convert result to dictionary."""
        return {
            "name": self.name,
            "passed": self.passed,
            "cases": self.cases,
            "failures": list(self.failures),
            "elapsed": round(self.elapsed, 3),
        }


class BaseCheck(ABC):
    """
    Abstract base class for identity checks.

    Subclasses yield one (label, ok) pair per tested instance; run() turns
    them into a CheckResult and records domain errors as failures.
    """

    name: str = ""
    description: str = ""

    @abstractmethod
    def evaluate(self) -> Iterator[Tuple[str, bool]]:
        """
        Run the tested instances.

        Yields:
            (case label, whether the identity holds).
        """

    def run(self) -> CheckResult:
        """Run every case and collect the outcome."""
        result = CheckResult(name=self.name, passed=True)
        start = time.perf_counter()
        try:
            for label, ok in self.evaluate():
                result.cases += 1
                if not ok:
                    result.failures.append(label)
                    logger.warning("check %s failed on %s", self.name, label)
        except ChowException as e:
            result.failures.append(str(e))
            logger.error("check %s raised %s", self.name, e)
        result.passed = not result.failures
        result.elapsed = time.perf_counter() - start
        return result

    def get_info(self) -> Dict[str, str]:
        return {"name": self.name, "description": self.description}
