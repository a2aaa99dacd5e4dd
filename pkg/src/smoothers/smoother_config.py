"""
Smoother Configuration
"""

from dataclasses import dataclass
from enum import Enum
from typing import Union

from ..utils.errors import SmootherError


class SmootherKind(Enum):
    """Relaxation schemes"""
    COLLECTIVE_JACOBI = "cj"
    COLLECTIVE_GS = "cgs"
    DISTRIBUTIVE = "dgs"

    @classmethod
    def parse(cls, value: Union[str, "SmootherKind"]) -> "SmootherKind":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).strip().lower())
        except ValueError as exc:
            raise SmootherError(f"unknown smoother '{value}', expected cj, cgs or dgs") from exc


@dataclass(frozen=True)
class SmootherConfig:
    """
    Smoother selection and parameters.

    Attributes:
        kind: Relaxation scheme
        damping: Collective Jacobi damping theta, in (0, 1]
        omega: Damped-Jacobi weight of the distributive Schur solve, in (0, 1]
        gs_sweeps: Scalar Gauss-Seidel sweeps on -tau B e_y = r_u
        jacobi_sweeps: Damped-Jacobi sweeps on the Schur equation
        exact_inner: Replace both inner relaxations by sparse direct solves
    """
    kind: SmootherKind = SmootherKind.COLLECTIVE_GS
    damping: float = 0.8
    omega: float = 0.5
    gs_sweeps: int = 1
    jacobi_sweeps: int = 1
    exact_inner: bool = False

    def __post_init__(self):
        object.__setattr__(self, "kind", SmootherKind.parse(self.kind))
        if not 0.0 < self.damping <= 1.0:
            raise SmootherError(f"damping must be in (0, 1], got {self.damping}")
        if not 0.0 < self.omega <= 1.0:
            raise SmootherError(f"omega must be in (0, 1], got {self.omega}")
        if self.gs_sweeps < 1 or self.jacobi_sweeps < 1:
            raise SmootherError("inner sweep counts must be at least 1")

    @classmethod
    def collective_jacobi(cls, damping: float = 0.8) -> "SmootherConfig":
        return cls(SmootherKind.COLLECTIVE_JACOBI, damping=damping)

    @classmethod
    def collective_gs(cls) -> "SmootherConfig":
        return cls(SmootherKind.COLLECTIVE_GS)

    @classmethod
    def distributive(cls, omega: float = 0.5, gs_sweeps: int = 1, jacobi_sweeps: int = 1,
                     exact_inner: bool = False) -> "SmootherConfig":
        return cls(SmootherKind.DISTRIBUTIVE, omega=omega, gs_sweeps=gs_sweeps,
                   jacobi_sweeps=jacobi_sweeps, exact_inner=exact_inner)

    @property
    def label(self) -> str:
        return self.kind.value.upper()
