"""
Coefficient Fields
Scalar diffusion coefficients a(x1, x2) and b(x1, x2) of the model problem.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Callable, Optional

import numpy as np


class CoefficientKind(Enum):
    """Available coefficient fields"""
    CONSTANT = "constant"
    NICE_A = "nice_a"
    NICE_B = "nice_b"
    DEGENERATE_A = "degenerate_a"
    DEGENERATE_B = "degenerate_b"
    CUSTOM = "custom"


@dataclass(frozen=True)
class Coefficient:
    """
    Coefficient field evaluated pointwise on arrays of coordinates.

    Attributes:
        kind: Which field this is
        value: Constant value for CONSTANT
        field: Callable (x, y) -> values for CUSTOM
        label: Display name for CUSTOM fields
    """
    kind: CoefficientKind
    value: float = 1.0
    field: Optional[Callable[[np.ndarray, np.ndarray], np.ndarray]] = None
    label: str = ""

    @classmethod
    def constant(cls, value: float) -> "Coefficient":
        return cls(CoefficientKind.CONSTANT, value=float(value))

    @classmethod
    def nice_a(cls) -> "Coefficient":
        return cls(CoefficientKind.NICE_A)

    @classmethod
    def nice_b(cls) -> "Coefficient":
        return cls(CoefficientKind.NICE_B)

    @classmethod
    def degenerate_a(cls) -> "Coefficient":
        return cls(CoefficientKind.DEGENERATE_A)

    @classmethod
    def degenerate_b(cls) -> "Coefficient":
        return cls(CoefficientKind.DEGENERATE_B)

    @classmethod
    def custom(cls, field: Callable[[np.ndarray, np.ndarray], np.ndarray], label: str = "custom") -> "Coefficient":
        return cls(CoefficientKind.CUSTOM, field=field, label=label)

    @classmethod
    def from_name(cls, name: str) -> "Coefficient":
        """
        Parse a coefficient name.

        Accepts "nice_a", "nice_b", "degenerate_a", "degenerate_b", "one" and
        "constant:<value>".
        """
        key = name.strip().lower()
        if key.startswith("constant:"):
            return cls.constant(float(key.split(":", 1)[1]))
        if key in ("one", "unit"):
            return cls.constant(1.0)
        try:
            kind = CoefficientKind(key)
        except ValueError as exc:
            raise ValueError(f"unknown coefficient '{name}'") from exc
        if kind in (CoefficientKind.CONSTANT, CoefficientKind.CUSTOM):
            raise ValueError(f"coefficient '{name}' needs a value or a callable")
        return cls(kind)

    @property
    def name(self) -> str:
        if self.kind is CoefficientKind.CONSTANT:
            return f"constant:{self.value:g}"
        if self.kind is CoefficientKind.CUSTOM:
            return self.label
        return self.kind.value

    def __call__(self, x, y) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        if self.kind is CoefficientKind.CONSTANT:
            return np.full(np.broadcast(x, y).shape, self.value)
        if self.kind is CoefficientKind.NICE_A:
            return np.ones(np.broadcast(x, y).shape)
        if self.kind is CoefficientKind.NICE_B:
            return np.where(y < x, 0.6, 1.2)
        if self.kind is CoefficientKind.DEGENERATE_A:
            return 0.1 * np.abs(x) + np.abs(y)
        if self.kind is CoefficientKind.DEGENERATE_B:
            return 10.0 + 3.0 * np.sin(5.0 * np.pi * x) * np.sin(8.0 * np.pi * y)
        return np.broadcast_to(np.asarray(self.field(x, y), dtype=float), np.broadcast(x, y).shape)
