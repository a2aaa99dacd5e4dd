"""
Multigrid Hierarchy
Nested re-discretized levels of the L-shaped problem with block P1 transfers,
per-level smoothers and a dense LU of the coarsest operator.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional, Tuple, Union

import numpy as np
import scipy.linalg as la
import scipy.sparse as sp

from ..assembly.discrete_problem import DiscreteProblem, ProblemSpec, assemble_problem
from ..block_system.block_operator import BlockOperator, BlockVariant, build_block
from ..mesh.lshape_mesh import build_mesh_hierarchy
from ..smoothers.factory import Smoother, make_smoother
from ..smoothers.smoother_config import SmootherConfig, SmootherKind
from ..utils.errors import HierarchyError, SmootherError

logger = logging.getLogger(__name__)


class CycleType(Enum):
    """Number of coarse-grid visits per level: V once, W twice"""
    V = "v"
    W = "w"

    @classmethod
    def parse(cls, value: Union[str, "CycleType"]) -> "CycleType":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).strip().lower())
        except ValueError as exc:
            raise ValueError(f"unknown cycle '{value}', expected v or w") from exc

    @property
    def visits(self) -> int:
        return 1 if self is CycleType.V else 2


@dataclass(frozen=True, eq=False)
class MGLevel:
    """One level: its problem, target operator, smoother and prolongation from the level below."""
    problem: DiscreteProblem
    op: BlockOperator
    smoother: Optional[Smoother]
    prolongation: Optional[sp.csr_matrix]

    @property
    def restriction(self) -> Optional[sp.csr_matrix]:
        return None if self.prolongation is None else self.prolongation.T.tocsr()


@dataclass(frozen=True, eq=False)
class MGHierarchy:
    """
    Levels ordered coarse to fine.

    Attributes:
        levels: Per-level data, levels[0] is the coarsest
        coarse_lu: LU factors of the dense coarsest operator
        smoother: Smoother configuration used on every level above the coarsest
        cycle: V or W
        pre, post: Smoothing sweeps before and after the coarse correction
        target: Which block operator the cycle approximates
    """
    levels: List[MGLevel]
    coarse_lu: Tuple[np.ndarray, np.ndarray]
    smoother: SmootherConfig
    cycle: CycleType
    pre: int
    post: int
    target: BlockVariant
    spec: Optional[ProblemSpec] = field(default=None)

    @property
    def finest(self) -> MGLevel:
        return self.levels[-1]

    @property
    def tau(self) -> float:
        return self.finest.problem.tau

    @property
    def n_levels(self) -> int:
        return len(self.levels)

    def with_tau(self, tau: float) -> "MGHierarchy":
        """Same meshes and assembly, operators and smoothers rebuilt for a new tau."""
        problems = [level.problem.with_tau(tau) for level in self.levels]
        prolongations = [level.prolongation for level in self.levels]
        return _assemble_hierarchy(problems, prolongations, self.target, self.smoother,
                                   self.cycle, self.pre, self.post, self.spec)


def block_prolongation(scalar: sp.csr_matrix) -> sp.csr_matrix:
    """Apply the scalar P1 prolongation to the v-part and u-part separately."""
    return sp.block_diag((scalar, scalar), format="csr")


def _assemble_hierarchy(problems: List[DiscreteProblem], prolongations: List[Optional[sp.csr_matrix]],
                        target: BlockVariant, smoother: SmootherConfig, cycle: CycleType,
                        pre: int, post: int, spec: Optional[ProblemSpec]) -> MGHierarchy:
    levels = []
    for index, (problem, prolongation) in enumerate(zip(problems, prolongations)):
        op = build_block(problem, target)
        level_smoother = make_smoother(problem, op, smoother) if index > 0 else None
        levels.append(MGLevel(problem, op, level_smoother, prolongation))
    coarse = levels[0].op.to_dense()
    coarse_lu = la.lu_factor(coarse)
    return MGHierarchy(levels, coarse_lu, smoother, cycle, pre, post, target, spec)


def build_hierarchy(fine_level: int, coarse_level: int, spec: ProblemSpec, tau: float,
                    target: Union[str, BlockVariant] = BlockVariant.A,
                    smoother: SmootherConfig = SmootherConfig(),
                    cycle: Union[str, CycleType] = CycleType.V,
                    pre: int = 1, post: int = 1) -> MGHierarchy:
    """
    Assemble every level from its own mesh and wire up transfers and smoothers.

    Args:
        fine_level: Finest mesh level
        coarse_level: Coarsest mesh level, solved by dense LU
        spec: Coefficients and boundary condition
        tau: Square root of the time step
        target: Operator the cycle approximates (A, B or Btilde)
        smoother: Smoother configuration
        cycle: "v" or "w"
        pre, post: Smoothing sweeps

    Returns:
        MGHierarchy with levels coarse_level..fine_level

    Raises:
        HierarchyError: for an invalid level range or an empty coarsest level
    """
    target = BlockVariant.parse(target)
    cycle = CycleType.parse(cycle)
    if target is BlockVariant.BD:
        raise HierarchyError("no multigrid hierarchy for the block-diagonal preconditioner")
    if smoother.kind is SmootherKind.DISTRIBUTIVE and target is BlockVariant.A:
        raise SmootherError("distributive smoothing is defined for targets B and Btilde only")
    if not 0 <= coarse_level <= fine_level:
        raise HierarchyError(f"need 0 <= coarse_level <= fine_level, got {coarse_level} and {fine_level}")
    if pre < 0 or post < 0:
        raise HierarchyError("smoothing sweep counts must be nonnegative")

    meshes, transfers = build_mesh_hierarchy(fine_level, coarse_level)
    problems = [assemble_problem(mesh.level, spec, tau, mesh=mesh) for mesh in meshes]
    if problems[0].n == 0:
        raise HierarchyError(
            f"coarsest level {coarse_level} has no free dofs under {spec.bc.name}; use coarse_level >= 1"
        )

    prolongations: List[Optional[sp.csr_matrix]] = [None]
    for transfer, coarse, fine in zip(transfers, problems[:-1], problems[1:]):
        scalar = transfer.restricted(fine.dofmap.free, coarse.dofmap.free)
        prolongations.append(block_prolongation(scalar))

    hierarchy = _assemble_hierarchy(problems, prolongations, target, smoother, cycle, pre, post, spec)
    logger.info(
        "built %s-cycle hierarchy levels %d..%d for %s (N_h=%d, tau=%g, smoother=%s)",
        cycle.value.upper(), coarse_level, fine_level, target.value, problems[-1].n, tau, smoother.label,
    )
    return hierarchy
