"""
Utils Package
Shared configuration and error types for the solver packages.
"""

from .settings import Settings, get_settings
from .errors import (
    LumoError,
    DimensionMismatchError,
    SingularBlockError,
    AssemblyError,
    EigenSolverError,
    DenseCapExceededError,
    SymmetryError,
    PositivityError,
    SmootherError,
    HierarchyError,
    CoefficientMismatchError,
    ConfigurationError,
)

__all__ = [
    "Settings",
    "get_settings",
    "LumoError",
    "DimensionMismatchError",
    "SingularBlockError",
    "AssemblyError",
    "EigenSolverError",
    "DenseCapExceededError",
    "SymmetryError",
    "PositivityError",
    "SmootherError",
    "HierarchyError",
    "CoefficientMismatchError",
    "ConfigurationError",
]
