"""
Multigrid Cycles
V/W cycles over an MGHierarchy and the stationary multigrid solver built on them.
"""

import logging
import time
from typing import Optional

import numpy as np
import scipy.linalg as la

from ..utils.errors import DimensionMismatchError
from .hierarchy import MGHierarchy
from .solve_report import SolveReport

logger = logging.getLogger(__name__)


def _cycle(h: MGHierarchy, k: int, x: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    if k == 0:
        return la.lu_solve(h.coarse_lu, rhs)
    level = h.levels[k]
    if h.pre:
        x = level.smoother(x, rhs, h.pre)
    residual = rhs - level.op.apply(x)
    coarse_rhs = level.prolongation.T @ residual
    correction = np.zeros_like(coarse_rhs)
    for _ in range(h.cycle.visits):
        correction = _cycle(h, k - 1, correction, coarse_rhs)
    x = x + level.prolongation @ correction
    if h.post:
        x = level.smoother(x, rhs, h.post)
    return x


def mg_cycle(h: MGHierarchy, rhs: np.ndarray, x: np.ndarray) -> np.ndarray:
    """
    One multigrid cycle on the finest level.

    Args:
        h: Hierarchy
        rhs: Right-hand side of length 2 N_h
        x: Current iterate of length 2 N_h

    Returns:
        New iterate; inputs are not modified
    """
    size = h.finest.op.shape[0]
    rhs = np.asarray(rhs, dtype=float)
    x = np.asarray(x, dtype=float)
    if rhs.shape[0] != size:
        raise DimensionMismatchError("mg_cycle rhs", size, rhs.shape[0])
    if x.shape[0] != size:
        raise DimensionMismatchError("mg_cycle x", size, x.shape[0])
    return _cycle(h, h.n_levels - 1, x, rhs)


def random_initial_guess(size: int, seed: int) -> np.ndarray:
    """Entries uniform in [0, 1) from a seeded generator."""
    return np.random.default_rng(seed).random(size)


def mg_solve(h: MGHierarchy, rhs: Optional[np.ndarray] = None, tol: float = 1e-7, maxit: int = 200,
             seed: int = 0, x0: Optional[np.ndarray] = None) -> SolveReport:
    """
    Iterate multigrid cycles until ||rhs - op x|| / ||r_0|| < tol or maxit cycles.

    Args:
        h: Hierarchy
        rhs: Right-hand side, the finest problem's (f; g) by default
        tol: Relative residual tolerance
        maxit: Maximum number of cycles
        seed: Seed of the random initial guess
        x0: Explicit initial guess, overrides the random one

    Returns:
        SolveReport with the final iterate attached as `solution`
    """
    if tol <= 0.0:
        raise ValueError(f"tol must be positive, got {tol}")
    start = time.perf_counter()
    op = h.finest.op
    rhs = h.finest.problem.rhs() if rhs is None else np.asarray(rhs, dtype=float)
    x = random_initial_guess(op.shape[0], seed) if x0 is None else np.array(x0, dtype=float)
    residuals = [float(np.linalg.norm(rhs - op.apply(x)))]
    converged = residuals[0] == 0.0
    while not converged and len(residuals) <= maxit:
        x = mg_cycle(h, rhs, x)
        residuals.append(float(np.linalg.norm(rhs - op.apply(x))))
        logger.debug("cycle %d: relative residual %.3e", len(residuals) - 1, residuals[-1] / residuals[0])
        converged = residuals[-1] < tol * residuals[0]
    wall_ms = 1000.0 * (time.perf_counter() - start)
    report = SolveReport.from_history(residuals, converged, wall_ms, solution=x)
    if not converged:
        logger.warning("multigrid did not converge in %d cycles (relative residual %.2e)",
                       maxit, report.relative_residual)
    return report
