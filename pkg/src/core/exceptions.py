"""
Custom exceptions for prestable-chow.

Provides domain-specific exceptions for graphs, classes, substacks,
rewriting and linear algebra.
"""


class ChowException(Exception):
    """Base exception for all prestable-chow errors."""

    def __init__(self, message: str, code: str = "CHOW_ERROR"):
        self.message = message
        self.code = code
        super().__init__(self.message)

    def __str__(self) -> str:
        return f"[{self.code}] {self.message}"


class GraphException(ChowException):
    """Exception raised for invalid prestable graphs or graph surgery."""

    def __init__(self, message: str, invariant: str = None):
        super().__init__(message, code="GRAPH_ERROR")
        self.invariant = invariant


class AmbientMismatchException(ChowException):
    """Exception raised when classes on different ambients are combined."""

    def __init__(self, message: str):
        super().__init__(message, code="AMBIENT_MISMATCH")


class SubstackException(ChowException):
    """Exception raised for unknown or ill-posed substack specs."""

    def __init__(self, message: str, spec: str = None):
        super().__init__(message, code="SUBSTACK_ERROR")
        self.spec = spec


class NormalizationException(ChowException):
    """Exception raised when rewriting into normal form fails."""

    def __init__(self, message: str):
        super().__init__(message, code="NORMALIZATION_ERROR")


class DegreeException(ChowException):
    """Exception raised when a pure-degree class is required."""

    def __init__(self, message: str):
        super().__init__(message, code="DEGREE_ERROR")


class DimensionException(ChowException):
    """Exception raised on matrix/vector shape mismatches."""

    def __init__(self, message: str):
        super().__init__(message, code="DIMENSION_ERROR")


class ValidationException(ChowException):
    """Exception raised when configuration validation fails."""

    def __init__(self, message: str, field: str = None):
        super().__init__(message, code="VALIDATION_ERROR")
        self.field = field


class RegistryException(ChowException):
    """Exception raised when the check registry encounters an error."""

    def __init__(self, message: str):
        super().__init__(message, code="REGISTRY_ERROR")
