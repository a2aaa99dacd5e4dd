"""
Distributive Smoother
Relaxation of a lumped preconditioner system after the change of variables
e = P (e_x; e_y), P = [[tau M̄^-1 B, 0], [I, I]], which turns the target into
the upper block-triangular [[S, M*], [0, -tau B]] with S = M* + tau^2 A M̄^-1 B
(M* = M for Btilde, M̄ for B). Each sweep relaxes the two decoupled equations
separately and maps the correction back.
"""

import logging
from typing import Union

import numpy as np
from pyamg.relaxation.relaxation import gauss_seidel
from scipy.sparse.linalg import splu

from ..assembly.discrete_problem import DiscreteProblem
from ..block_system.block_operator import BlockVariant, build_block
from ..block_system.schur import schur_apply, schur_diagonal, schur_matrix
from ..utils.errors import DimensionMismatchError, SmootherError
from .smoother_config import SmootherConfig, SmootherKind

logger = logging.getLogger(__name__)


class DistributiveSmoother:
    """Distributive relaxation for target 𝓑 or 𝓑̃ on one level."""

    def __init__(self, problem: DiscreteProblem, target: Union[str, BlockVariant], config: SmootherConfig):
        variant = BlockVariant.parse(target)
        if variant not in (BlockVariant.B, BlockVariant.BTILDE):
            raise SmootherError(f"distributive smoothing needs target B or Btilde, got {variant.value}")
        if config.kind is not SmootherKind.DISTRIBUTIVE:
            raise SmootherError("DistributiveSmoother needs a distributive smoother config")
        if problem.tau == 0.0:
            raise SmootherError("distributive smoothing needs tau > 0, the e_y equation is singular at tau = 0")
        self.problem = problem
        self.config = config
        self.lumped = variant is BlockVariant.B
        self.op = build_block(problem, variant)
        self.neg_tau_b = (-problem.tau * problem.B).tocsr()
        self.coupling = problem.Mbar if self.lumped else problem.M
        self.diagonal = schur_diagonal(problem, lumped=self.lumped)
        if config.exact_inner:
            self._solve_y = splu(self.neg_tau_b.tocsc()).solve
            self._solve_x = splu(schur_matrix(problem, lumped=self.lumped).tocsc()).solve

    def _relax_y(self, r_u: np.ndarray) -> np.ndarray:
        if self.config.exact_inner:
            return self._solve_y(r_u)
        e_y = np.zeros_like(r_u)
        gauss_seidel(self.neg_tau_b, e_y, np.ascontiguousarray(r_u),
                     iterations=self.config.gs_sweeps, sweep="forward")
        return e_y

    def _relax_x(self, rhs_x: np.ndarray) -> np.ndarray:
        if self.config.exact_inner:
            return self._solve_x(rhs_x)
        omega = self.config.omega
        e_x = omega * self.diagonal.solve(rhs_x)
        for _ in range(self.config.jacobi_sweeps - 1):
            residual = rhs_x - schur_apply(self.problem, e_x, lumped=self.lumped)
            e_x = e_x + omega * self.diagonal.solve(residual)
        return e_x

    def __call__(self, x: np.ndarray, rhs: np.ndarray, sweeps: int = 1) -> np.ndarray:
        """Run `sweeps` distributive sweeps from x; x is not modified."""
        n = self.problem.n
        if len(x) != 2 * n or len(rhs) != 2 * n:
            raise DimensionMismatchError("distributive sweep", 2 * n, len(x) if len(x) != 2 * n else len(rhs))
        x = np.array(x, dtype=float)
        for _ in range(sweeps):
            residual = rhs - self.op.apply(x)
            r_v, r_u = residual[:n], residual[n:]
            e_y = self._relax_y(r_u)
            e_x = self._relax_x(r_v - self.coupling @ e_y)
            x[:n] += self.problem.tau * self.problem.Mbar.solve(self.problem.B @ e_x)
            x[n:] += e_x + e_y
        return x


def distributive_sweep(problem: DiscreteProblem, target: Union[str, BlockVariant], x: np.ndarray,
                       rhs: np.ndarray, config: SmootherConfig = SmootherConfig.distributive()) -> np.ndarray:
    """
    One distributive relaxation of the target system.

    Args:
        problem: Assembled problem with tau > 0
        target: "B" or "Btilde"
        x: Current iterate (v, u)
        rhs: Right-hand side (v, u)
        config: Distributive smoother parameters

    Returns:
        Updated iterate
    """
    return DistributiveSmoother(problem, target, config)(x, rhs)
