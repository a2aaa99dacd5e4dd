"""
Collective Smoothers
Pointwise relaxation of the block system: every sweep solves, for each grid
point i, the 2x2 system coupling v_i and u_i. The unknowns are interleaved so
pyamg's block relaxation kernels can run on 2x2 BSR blocks.
"""

import numpy as np
from pyamg.relaxation.relaxation import block_gauss_seidel, block_jacobi

from ..block_system.block_operator import BlockOperator, from_interleaved, to_interleaved
from ..utils.errors import DimensionMismatchError, SmootherError
from .smoother_config import SmootherConfig, SmootherKind


class CollectiveSmoother:
    """Collective Jacobi or Gauss-Seidel relaxation bound to one block operator."""

    def __init__(self, op: BlockOperator, config: SmootherConfig):
        if config.kind is SmootherKind.DISTRIBUTIVE:
            raise SmootherError("CollectiveSmoother needs a collective smoother config")
        if op.reordered:
            raise SmootherError(f"collective relaxation is not defined for variant {op.variant.value}")
        self.op = op
        self.config = config
        self.matrix = op.interleaved
        self.block_inverses = op.point_block_inverses

    def __call__(self, x: np.ndarray, rhs: np.ndarray, sweeps: int = 1) -> np.ndarray:
        """
        Run `sweeps` relaxation sweeps starting from x.

        Returns:
            New iterate in (v, u) ordering; x is not modified
        """
        size = 2 * self.op.n
        if len(x) != size or len(rhs) != size:
            raise DimensionMismatchError("collective sweep", size, len(x) if len(x) != size else len(rhs))
        w = np.ascontiguousarray(to_interleaved(np.asarray(x, dtype=float)))
        b = np.ascontiguousarray(to_interleaved(np.asarray(rhs, dtype=float)))
        if self.config.kind is SmootherKind.COLLECTIVE_JACOBI:
            block_jacobi(self.matrix, w, b, Dinv=self.block_inverses, blocksize=2,
                         iterations=sweeps, omega=self.config.damping)
        else:
            block_gauss_seidel(self.matrix, w, b, iterations=sweeps, sweep="forward",
                               blocksize=2, Dinv=self.block_inverses)
        return from_interleaved(w)


def collective_jacobi_sweep(op: BlockOperator, x: np.ndarray, rhs: np.ndarray, damping: float = 0.8) -> np.ndarray:
    """One sweep of x <- x + theta D^-1 (rhs - op x) with D the 2x2 point blocks."""
    return CollectiveSmoother(op, SmootherConfig.collective_jacobi(damping))(x, rhs)


def collective_gs_sweep(op: BlockOperator, x: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    """One forward collective Gauss-Seidel sweep in ascending dof order."""
    return CollectiveSmoother(op, SmootherConfig.collective_gs())(x, rhs)
