"""
Checks package - named identity checks and their registry.
"""

from src.checks.base import BaseCheck, CheckResult
from src.checks.registry import CheckRegistry, get_registry, register_default_checks

__all__ = [
    "BaseCheck",
    "CheckResult",
    "CheckRegistry",
    "get_registry",
    "register_default_checks",
]
