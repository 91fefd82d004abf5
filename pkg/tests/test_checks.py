"""
Tests for the identity checks and their registry.
"""

import pytest

from src.checks import BaseCheck, CheckRegistry, CheckResult, get_registry, register_default_checks
from src.core import DegreeException, RegistryException


class AlwaysPasses(BaseCheck):
    name = "always-passes"
    description = "two passing cases"

    def evaluate(self):
        yield "first", True
        yield "second", True


class FailsOnce(BaseCheck):
    name = "fails-once"
    description = "one failing case"

    def evaluate(self):
        yield "good", True
        yield "bad", False


class Raises(BaseCheck):
    name = "raises"
    description = "raises a domain error midway"

    def evaluate(self):
        yield "before", True
        raise DegreeException("mixed degrees")


class TestBaseCheck:
    def test_passing_run(self):
        result = AlwaysPasses().run()
        assert result.passed
        assert result.cases == 2
        assert result.failures == []
        assert result.elapsed >= 0

    def test_failures_are_labelled(self):
        result = FailsOnce().run()
        assert not result.passed
        assert result.failures == ["bad"]

    def test_domain_errors_become_failures(self):
        result = Raises().run()
        assert not result.passed
        assert result.cases == 1
        assert result.failures == ["[DEGREE_ERROR] mixed degrees"]

    def test_result_dict(self):
        data = CheckResult(name="x", passed=False, cases=3, failures=["a"], elapsed=0.12345).to_dict()
        assert data == {"name": "x", "passed": False, "cases": 3, "failures": ["a"], "elapsed": 0.123}


class TestCheckRegistry:
    def test_register_and_run(self):
        registry = CheckRegistry()
        registry.register_check(AlwaysPasses)
        registry.register_check(FailsOnce)
        assert registry.list_names() == ["always-passes", "fails-once"]
        results = registry.run()
        assert [r.passed for r in results] == [True, False]
        assert [r.name for r in registry.run(["fails-once"])] == ["fails-once"]

    def test_duplicate_names(self):
        registry = CheckRegistry()
        registry.register_check(AlwaysPasses)
        with pytest.raises(RegistryException):
            registry.register_check(AlwaysPasses)

    def test_unknown_names_fail_before_running(self):
        registry = CheckRegistry()
        registry.register_check(FailsOnce)
        with pytest.raises(RegistryException):
            registry.run(["fails-once", "missing"])
        with pytest.raises(RegistryException):
            registry.create_check("missing")

    def test_factory_and_unregister(self):
        registry = CheckRegistry()
        made = []

        def factory():
            check = AlwaysPasses()
            made.append(check)
            return check

        registry.register_check(AlwaysPasses, factory)
        registry.create_check("always-passes")
        assert len(made) == 1
        registry.unregister_check("always-passes")
        assert not registry.is_registered("always-passes")
        with pytest.raises(RegistryException):
            registry.unregister_check("always-passes")

    def test_registry_info(self):
        registry = CheckRegistry()
        registry.register_check(AlwaysPasses)
        info = registry.get_registry_info()
        assert info["total_checks"] == 1
        assert info["descriptions"] == {"always-passes": "two passing cases"}

    def test_defaults_register_once(self):
        register_default_checks()
        register_default_checks()
        names = get_registry().list_names()
        assert len(names) == len(set(names))
        for expected in ("psi-self-intersection", "kappa-closure", "wdvv", "degree-one-rank"):
            assert expected in names


DEFAULT_CHECKS = [
    "psi-self-intersection",
    "kappa-closure",
    "psi-boundary",
    "wdvv",
    "stabilization-kappa",
    pytest.param("forgetful-stabilization", marks=pytest.mark.slow),
    "pullback-vanishing",
    "unstable-divisors",
    pytest.param("degree-one-rank", marks=pytest.mark.slow),
]


class TestDefaultChecks:
    @pytest.mark.parametrize("name", DEFAULT_CHECKS)
    def test_check_passes(self, name):
        register_default_checks()
        result = get_registry().create_check(name).run()
        assert result.passed, result.failures
        assert result.cases > 0
