"""
Flexible GMRES
Right-preconditioned GMRES without restart. The preconditioned directions are
stored so the preconditioner may change between iterations (one inexact
multigrid cycle per step).
"""

import logging
import time
from typing import Callable, Optional, Tuple

import numpy as np
import scipy.linalg as la

from ..multigrid.solve_report import SolveReport
from ..utils.errors import DimensionMismatchError

logger = logging.getLogger(__name__)

LinearAction = Callable[[np.ndarray], np.ndarray]


def _identity(x: np.ndarray) -> np.ndarray:
    return x


def fgmres(apply_A: LinearAction, apply_P: Optional[LinearAction], rhs: np.ndarray,
           x0: Optional[np.ndarray] = None, tol: float = 1e-7, maxit: int = 200) -> Tuple[np.ndarray, SolveReport]:
    """
    Solve A x = rhs by flexible GMRES.

    Arnoldi uses modified Gram-Schmidt; the Hessenberg least-squares problem is
    reduced with Givens rotations so the residual norm is read off the rotated
    right-hand side.

    Args:
        apply_A: x -> A x
        apply_P: r -> approximate A^-1 r, identity when None
        rhs: Right-hand side
        x0: Initial guess, zero when None
        tol: Relative residual tolerance ||r_k|| / ||r_0||
        maxit: Iteration cap, clamped to the problem size

    Returns:
        (solution, SolveReport)
    """
    start = time.perf_counter()
    apply_P = apply_P or _identity
    b = np.asarray(rhs, dtype=float)
    n = b.shape[0]
    x = np.zeros(n) if x0 is None else np.array(x0, dtype=float)
    if x.shape[0] != n:
        raise DimensionMismatchError("fgmres x0", n, x.shape[0])
    maxit = max(0, min(int(maxit), n))

    r = b - apply_A(x)
    beta = float(np.linalg.norm(r))
    residuals = [beta]
    if beta == 0.0:
        return x, SolveReport.from_history(residuals, True, 1000.0 * (time.perf_counter() - start), x)

    V = np.zeros((maxit + 1, n))
    Z = np.zeros((maxit, n))
    H = np.zeros((maxit + 1, maxit))
    cs = np.zeros(maxit)
    sn = np.zeros(maxit)
    g = np.zeros(maxit + 1)
    g[0] = beta
    V[0] = r / beta

    k = 0
    converged = False
    breakdown = False
    for j in range(maxit):
        Z[j] = apply_P(V[j])
        w = apply_A(Z[j])
        for i in range(j + 1):
            H[i, j] = np.dot(w, V[i])
            w -= H[i, j] * V[i]
        H[j + 1, j] = np.linalg.norm(w)
        breakdown = H[j + 1, j] <= 1e-14 * beta
        if not breakdown:
            V[j + 1] = w / H[j + 1, j]

        for i in range(j):
            upper = cs[i] * H[i, j] + sn[i] * H[i + 1, j]
            H[i + 1, j] = -sn[i] * H[i, j] + cs[i] * H[i + 1, j]
            H[i, j] = upper
        denom = np.hypot(H[j, j], H[j + 1, j])
        if denom == 0.0:
            logger.warning("fgmres: preconditioned operator is singular on the Krylov space")
            break
        cs[j] = H[j, j] / denom
        sn[j] = H[j + 1, j] / denom
        H[j, j] = denom
        H[j + 1, j] = 0.0
        g[j + 1] = -sn[j] * g[j]
        g[j] = cs[j] * g[j]

        k = j + 1
        residuals.append(abs(float(g[j + 1])))
        logger.debug("fgmres step %d: relative residual %.3e", k, residuals[-1] / beta)
        if residuals[-1] < tol * beta or breakdown:
            converged = True
            break

    if k:
        y = la.solve_triangular(H[:k, :k], g[:k])
        x = x + Z[:k].T @ y
    breakdown = breakdown and converged
    if breakdown:
        # The Krylov space is invariant, so the rotated residual is exact zero.
        # Record the true residual, floored at round-off so the history stays positive.
        true_residual = float(np.linalg.norm(b - apply_A(x)))
        residuals[-1] = max(true_residual, np.finfo(float).eps * beta)
        logger.debug("fgmres: happy breakdown after %d steps", k)
    wall_ms = 1000.0 * (time.perf_counter() - start)
    report = SolveReport.from_history(residuals, converged, wall_ms, x)
    report.breakdown = breakdown
    if not converged:
        logger.warning("fgmres did not converge in %d iterations (relative residual %.2e)",
                       k, report.relative_residual)
    return x, report
