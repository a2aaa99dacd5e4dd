"""
Spectrum Report
Eigenvalues of a preconditioned operator plus named bound checks.
"""

from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np
import pandas as pd
from dataclasses_json import config, dataclass_json


def _encode_complex(values: np.ndarray) -> List[List[float]]:
    return [[float(z.real), float(z.imag)] for z in np.asarray(values, dtype=complex)]


def _decode_complex(pairs: List[List[float]]) -> np.ndarray:
    return np.array([complex(re, im) for re, im in pairs], dtype=complex)


@dataclass_json
@dataclass
class BoundCheck:
    """One verified inequality: margin >= 0 means satisfied with that much room."""
    name: str
    satisfied: bool
    margin: float

    @classmethod
    def at_most(cls, name: str, value: float, bound: float) -> "BoundCheck":
        return cls(name, bool(value <= bound), float(bound - value))

    @classmethod
    def below(cls, name: str, value: float, bound: float) -> "BoundCheck":
        return cls(name, bool(value < bound), float(bound - value))

    @classmethod
    def at_least(cls, name: str, value: float, bound: float) -> "BoundCheck":
        return cls(name, bool(value >= bound), float(value - bound))


@dataclass_json
@dataclass
class SpectrumReport:
    """
    Attributes:
        eigenvalues: All eigenvalues, serialized as [re, im] pairs
        rho: Largest eigenvalue modulus
        C1: Measured norm-equivalence constant, when computed
        bound_checks: Named inequalities and their margins
        label: Which operator the eigenvalues belong to
        h, tau: Mesh size and time-step parameter, when known
    """
    eigenvalues: np.ndarray = field(metadata=config(encoder=_encode_complex, decoder=_decode_complex))
    rho: float
    C1: Optional[float] = None
    bound_checks: List[BoundCheck] = field(default_factory=list)
    label: str = ""
    h: Optional[float] = None
    tau: Optional[float] = None

    @classmethod
    def from_eigenvalues(cls, eigenvalues: np.ndarray, **kwargs) -> "SpectrumReport":
        eigenvalues = np.asarray(eigenvalues, dtype=complex)
        rho = float(np.abs(eigenvalues).max()) if eigenvalues.size else 0.0
        return cls(eigenvalues=eigenvalues, rho=rho, **kwargs)

    @property
    def passed(self) -> bool:
        return all(check.satisfied for check in self.bound_checks)

    def scatter_frame(self) -> pd.DataFrame:
        """Plot-ready rows re, im, h, tau, precond."""
        return pd.DataFrame({
            "re": self.eigenvalues.real,
            "im": self.eigenvalues.imag,
            "h": self.h,
            "tau": self.tau,
            "precond": self.label,
        })
