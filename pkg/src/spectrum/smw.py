"""
Sherman-Morrison-Woodbury Check
Numerical check of V^T (A + U V^T)^-1 U = (I + (V^T A^-1 U)^-1)^-1 on random samples.
"""

import logging
from typing import Optional

import numpy as np
import scipy.linalg as la

from .spectrum_report import BoundCheck

logger = logging.getLogger(__name__)


def smw_sides(A: np.ndarray, U: np.ndarray, V: np.ndarray):
    """
    Both sides of the identity.

    When W = V^T A^-1 U is singular the right side is evaluated as W (I + W)^-1,
    which equals (I + W^-1)^-1 whenever W is invertible.
    """
    k = U.shape[1]
    identity = np.eye(k)
    left = V.T @ la.solve(A + U @ V.T, U)
    W = V.T @ la.solve(A, U)
    if np.linalg.cond(W) < 1e12:
        right = la.inv(identity + la.inv(W))
    else:
        right = W @ la.inv(identity + W)
    return left, right


def verify_smw_identity(n: int = 10, k: int = 3, trials: int = 20, seed: int = 0,
                        tol: float = 1e-9, max_retries: int = 10) -> BoundCheck:
    """
    Compare both sides on `trials` random well-conditioned samples.

    Samples whose matrices are close to singular are redrawn, at most
    `max_retries` times per trial.

    Returns:
        BoundCheck on the largest relative deviation
    """
    rng = np.random.default_rng(seed)
    worst = 0.0
    passed = 0
    for _ in range(trials):
        for _attempt in range(max_retries + 1):
            A = n * np.eye(n) + rng.standard_normal((n, n))
            U = rng.standard_normal((n, k))
            V = rng.standard_normal((n, k))
            W = V.T @ la.solve(A, U)
            if np.linalg.cond(A + U @ V.T) < 1e8 and np.linalg.cond(W) < 1e8 \
                    and np.linalg.cond(np.eye(k) + W) < 1e8:
                break
        left, right = smw_sides(A, U, V)
        deviation = np.abs(left - right).max() / max(np.abs(right).max(), 1.0)
        worst = max(worst, deviation)
        passed += deviation < tol
    logger.info("SMW identity: %d/%d samples within %.0e", passed, trials, tol)
    return BoundCheck.at_most(f"SMW identity ({passed}/{trials} samples)", worst, tol)
