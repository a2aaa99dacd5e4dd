"""
Errors
Exception hierarchy shared by the solver packages. Library code raises these;
the CLI and the HTTP app translate them into exit codes and status codes.
"""

from typing import List, Optional


class LumoError(Exception):
    """Base class for all solver errors."""


class DimensionMismatchError(LumoError, ValueError):
    """Operand sizes do not agree."""

    def __init__(self, what: str, expected: int, got: int):
        super().__init__(f"{what}: expected dimension {expected}, got {got}")
        self.expected = expected
        self.got = got


class SingularBlockError(LumoError):
    """A collective 2x2 local block has zero determinant."""

    def __init__(self, index: int):
        super().__init__(f"singular 2x2 block at dof {index}")
        self.index = index


class AssemblyError(LumoError):
    """Coefficient quadrature value is not strictly positive on a triangle."""

    def __init__(self, triangle_id: int, value: float):
        super().__init__(f"nonpositive coefficient value {value!r} on triangle {triangle_id}")
        self.triangle_id = triangle_id
        self.value = value


class EigenSolverError(LumoError):
    """Dense eigensolver did not converge."""


class DenseCapExceededError(LumoError):
    """Requested densification is larger than the configured cap."""

    def __init__(self, n: int, cap: int):
        super().__init__(f"dense dimension {n} exceeds cap {cap}")
        self.n = n
        self.cap = cap


class SymmetryError(LumoError, ValueError):
    """Matrix expected to be symmetric is not."""


class PositivityError(LumoError, ValueError):
    """Entry expected to be strictly positive is not."""


class SmootherError(LumoError):
    """Smoother configured or applied outside its valid range."""


class HierarchyError(LumoError):
    """Invalid multigrid level range."""


class CoefficientMismatchError(LumoError):
    """Operation requires identical a and b coefficient fields."""


class ConfigurationError(LumoError):
    """Invalid experiment configuration."""

    def __init__(self, message: str, fields: Optional[List[str]] = None):
        super().__init__(message)
        self.fields = fields or []
