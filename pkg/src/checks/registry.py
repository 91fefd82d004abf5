"""
Check Registry - Manages identity check registration and lookup.

Provides a centralized registry of the named checks run by `verify`,
allowing new checks to be registered without touching the CLI or API.
"""

from typing import Any, Callable, Dict, List, Optional, Type

from src.checks.base import BaseCheck, CheckResult
from src.core import RegistryException


class CheckRegistry:
    """Central registry mapping check names to check classes and factories."""

    def __init__(self):
        self._check_classes: Dict[str, Type[BaseCheck]] = {}
        self._check_factories: Dict[str, Callable[[], BaseCheck]] = {}

    def register_check(
        self,
        check_class: Type[BaseCheck],
        factory: Optional[Callable[[], BaseCheck]] = None,
    ) -> None:
        """
        Register a check under its name.

        Args:
            check_class: The class implementing the check.
            factory: Optional factory for custom parameters.

        Raises:
            RegistryException: If the name is already registered.
        """
        name = check_class.name
        if not name:
            raise RegistryException(f"check class {check_class.__name__} has no name")
        if name in self._check_classes:
            raise RegistryException(f"Check '{name}' is already registered")
        self._check_classes[name] = check_class
        self._check_factories[name] = factory or check_class

    def unregister_check(self, name: str) -> None:
        """
        Unregister a check.

        Raises:
            RegistryException: If the name is not registered.
        """
        self._require(name)
        del self._check_classes[name]
        del self._check_factories[name]

    def _require(self, name: str) -> None:
        if name not in self._check_classes:
            raise RegistryException(f"Check '{name}' is not registered")

    def create_check(self, name: str) -> BaseCheck:
        """
        Create a check instance.

        Raises:
            RegistryException: If the name is not registered.
        """
        self._require(name)
        return self._check_factories[name]()

    def get_check_class(self, name: str) -> Type[BaseCheck]:
        self._require(name)
        return self._check_classes[name]

    def is_registered(self, name: str) -> bool:
        return name in self._check_classes

    def list_names(self) -> List[str]:
        """Registered check names in registration order."""
        return list(self._check_classes.keys())

    def run(self, names: Optional[List[str]] = None) -> List[CheckResult]:
        """
        Run the named checks, or all of them.

        Unknown names are rejected before anything runs.

        Raises:
            RegistryException: If a name is not registered.
        """
        selected = list(names) if names else self.list_names()
        for name in selected:
            self._require(name)
        return [self.create_check(name).run() for name in selected]

    def get_registry_info(self) -> Dict[str, Any]:
        return {
            "registered_checks": self.list_names(),
            "total_checks": len(self._check_classes),
            "descriptions": {n: c.description for n, c in self._check_classes.items()},
        }


# Global registry instance
_global_registry = CheckRegistry()


def get_registry() -> CheckRegistry:
    """Get the global check registry."""
    return _global_registry


def register_default_checks() -> None:
    """Register all default checks; repeated calls are no-ops."""
    from src.checks.identities import (
        DegreeOneRankCheck,
        ForgetfulStabilizationCheck,
        KappaClosureCheck,
        PsiBoundaryCheck,
        PsiSelfIntersectionCheck,
        PullbackVanishingCheck,
        StabilizationKappaCheck,
        UnstableDivisorsCheck,
        WdvvCheck,
    )

    registry = get_registry()
    for check_class in (
        PsiSelfIntersectionCheck,
        KappaClosureCheck,
        PsiBoundaryCheck,
        WdvvCheck,
        StabilizationKappaCheck,
        ForgetfulStabilizationCheck,
        PullbackVanishingCheck,
        UnstableDivisorsCheck,
        DegreeOneRankCheck,
    ):
        if not registry.is_registered(check_class.name):
            registry.register_check(check_class)
