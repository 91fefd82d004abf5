"""
Core package - exceptions, settings and logging helpers.
"""

from src.core.exceptions import (
    ChowException,
    GraphException,
    AmbientMismatchException,
    SubstackException,
    NormalizationException,
    DegreeException,
    DimensionException,
    ValidationException,
    RegistryException,
)
from src.core.config import Settings, get_settings, override_settings

__all__ = [
    "ChowException",
    "GraphException",
    "AmbientMismatchException",
    "SubstackException",
    "NormalizationException",
    "DegreeException",
    "DimensionException",
    "ValidationException",
    "RegistryException",
    "Settings",
    "get_settings",
    "override_settings",
]
