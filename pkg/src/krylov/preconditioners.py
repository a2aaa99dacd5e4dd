"""
Preconditioners
Right-preconditioner actions for FGMRES: exact LU of a block operator, one
multigrid cycle on 𝓐, 𝓑 or 𝓑̃, and k Gauss-Seidel steps of the block-diagonal 𝓑_d.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Union

import numpy as np
from pyamg.relaxation.relaxation import gauss_seidel
from scipy.sparse.linalg import splu

from ..assembly.discrete_problem import DiscreteProblem
from ..block_system.block_operator import BlockOperator, BlockVariant, build_block
from ..multigrid.cycle import mg_cycle
from ..multigrid.hierarchy import CycleType, MGHierarchy
from ..smoothers.smoother_config import SmootherConfig
from ..utils.errors import ConfigurationError

logger = logging.getLogger(__name__)

Action = Callable[[np.ndarray], np.ndarray]


class InnerKind(Enum):
    """How a preconditioner system is solved"""
    MG = "mg"
    GS = "gs"
    LU = "lu"


@dataclass(frozen=True)
class InnerSolver:
    """
    Inner solve descriptor.

    Attributes:
        kind: One multigrid cycle, k Gauss-Seidel steps, or exact LU
        cycle, pre, post, smoother: Multigrid cycle parameters
        steps: Gauss-Seidel steps for GS
    """
    kind: InnerKind = InnerKind.MG
    cycle: CycleType = CycleType.V
    pre: int = 1
    post: int = 1
    smoother: SmootherConfig = field(default_factory=SmootherConfig)
    steps: int = 3

    @classmethod
    def parse(cls, text: str, **mg_options) -> "InnerSolver":
        """Parse "mg", "lu" or "gs(k)"."""
        key = text.strip().lower()
        if key == "mg":
            return cls(InnerKind.MG, **mg_options)
        if key == "lu":
            return cls(InnerKind.LU)
        if key.startswith("gs"):
            digits = key[2:].strip("() ")
            return cls(InnerKind.GS, steps=int(digits) if digits else 1)
        raise ConfigurationError(f"unknown inner solver '{text}', expected mg, lu or gs(k)", ["inner"])

    @property
    def label(self) -> str:
        if self.kind is InnerKind.MG:
            return f"{self.cycle.value.upper()}({self.pre},{self.post}) {self.smoother.label}-MG"
        if self.kind is InnerKind.GS:
            return f"GS({self.steps})"
        return "LU"


@dataclass(frozen=True)
class Preconditioner:
    """Which matrix preconditions 𝓐 and how its systems are solved."""
    kind: BlockVariant
    inner: InnerSolver = field(default_factory=InnerSolver)

    def __post_init__(self):
        object.__setattr__(self, "kind", BlockVariant.parse(self.kind))
        if self.kind is BlockVariant.BD and self.inner.kind is InnerKind.MG:
            raise ConfigurationError("precond Bd requires inner gs(k) or lu", ["precond", "inner"])

    @property
    def label(self) -> str:
        return f"{self.inner.label} on {self.kind.value}"


def lu_preconditioner(op: BlockOperator) -> Action:
    """Exact solve with a sparse LU of the operator."""
    return splu(op.sparse.tocsc()).solve


def mg_preconditioner(hierarchy: MGHierarchy) -> Action:
    """One multigrid cycle from the zero vector."""
    def apply(r: np.ndarray) -> np.ndarray:
        return mg_cycle(hierarchy, r, np.zeros_like(r))
    return apply


def gs_block_diagonal_preconditioner(problem: DiscreteProblem, steps: int) -> Action:
    """
    k forward Gauss-Seidel sweeps on each mass block of 𝓑_d from zero.

    𝓑_d maps (v, u) to (M u, M v), so the v-part solves with the second residual
    half and the u-part with the first.
    """
    n = problem.n
    mass = problem.M.tocsr()

    def apply(r: np.ndarray) -> np.ndarray:
        v = np.zeros(n)
        u = np.zeros(n)
        gauss_seidel(mass, u, np.ascontiguousarray(r[:n]), iterations=steps)
        gauss_seidel(mass, v, np.ascontiguousarray(r[n:]), iterations=steps)
        return np.concatenate([v, u])
    return apply


def build_preconditioner(precond: Preconditioner, problem: DiscreteProblem,
                         hierarchy: Union[MGHierarchy, None] = None) -> Action:
    """
    Preconditioner action for the finest problem.

    Args:
        precond: Preconditioner choice
        problem: Finest-level problem
        hierarchy: Multigrid hierarchy targeting precond.kind, needed for inner MG

    Returns:
        r -> approximate inverse of the preconditioner applied to r
    """
    inner = precond.inner
    if inner.kind is InnerKind.LU:
        return lu_preconditioner(build_block(problem, precond.kind))
    if inner.kind is InnerKind.GS:
        if precond.kind is not BlockVariant.BD:
            raise ConfigurationError("inner gs(k) is only defined for precond Bd", ["inner"])
        return gs_block_diagonal_preconditioner(problem, inner.steps)
    if hierarchy is None or hierarchy.target is not precond.kind:
        raise ConfigurationError(f"inner mg needs a hierarchy targeting {precond.kind.value}", ["inner"])
    return mg_preconditioner(hierarchy)
