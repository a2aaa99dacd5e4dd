"""
Dense Eigen-solves
Eigenvalues of small dense matrices for the spectral checks. LAPACK does the work
(balancing, Hessenberg reduction and shifted QR); failures surface as errors.
"""

import logging
from typing import Optional, Tuple

import numpy as np
import scipy.linalg as la
import scipy.sparse as sp

from ..utils.errors import DenseCapExceededError, EigenSolverError, PositivityError, SymmetryError
from ..utils.settings import get_settings

logger = logging.getLogger(__name__)


def check_dense_cap(n: int, cap: Optional[int] = None) -> None:
    """Raise DenseCapExceededError when n is above the cap (LUMO_DENSE_CAP by default)."""
    cap = get_settings().dense_cap if cap is None else cap
    if n > cap:
        raise DenseCapExceededError(n, cap)


def _as_dense(matrix) -> np.ndarray:
    if sp.issparse(matrix):
        return matrix.toarray()
    if hasattr(matrix, "toarray"):
        return matrix.toarray()
    return np.asarray(matrix, dtype=float)


def dense_eigenvalues(matrix, cap: Optional[int] = None) -> np.ndarray:
    """
    All eigenvalues of a square dense matrix.

    Args:
        matrix: square array (sparse input is densified)
        cap: maximum dimension, LUMO_DENSE_CAP by default

    Returns:
        Complex array of n eigenvalues
    """
    dense = _as_dense(matrix)
    if dense.ndim != 2 or dense.shape[0] != dense.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {dense.shape}")
    check_dense_cap(dense.shape[0], cap)
    if dense.shape[0] == 0:
        return np.zeros(0, dtype=complex)
    try:
        values = la.eigvals(dense, check_finite=True)
    except la.LinAlgError as exc:
        raise EigenSolverError(f"eigenvalue iteration failed to converge: {exc}") from exc
    return values.astype(complex)


def sym_generalized_eig_extremes(S, T, sym_tol: float = 1e-12) -> Tuple[float, float]:
    """
    Extreme values of the Rayleigh quotient (Su, u) / (Tu, u) for diagonal T.

    Computed as the extreme eigenvalues of T^(-1/2) S T^(-1/2).

    Args:
        S: symmetric matrix
        T: positive diagonal, as a vector, a DiagonalMatrix or a diagonal matrix
        sym_tol: relative asymmetry tolerated in S

    Returns:
        (lambda_min, lambda_max)
    """
    dense = _as_dense(S)
    if hasattr(T, "diag"):
        t = np.asarray(T.diag, dtype=float)
    elif sp.issparse(T):
        t = T.diagonal()
    else:
        t = np.asarray(T, dtype=float)
        if t.ndim == 2:
            t = np.diag(t)
    scale = max(np.abs(dense).max(initial=0.0), 1.0)
    if np.abs(dense - dense.T).max(initial=0.0) > sym_tol * scale:
        raise SymmetryError("S is not symmetric")
    if np.any(t <= 0.0):
        raise PositivityError("T must have strictly positive diagonal")
    check_dense_cap(dense.shape[0])
    d = 1.0 / np.sqrt(t)
    scaled = d[:, None] * dense * d[None, :]
    try:
        values = la.eigvalsh(0.5 * (scaled + scaled.T))
    except la.LinAlgError as exc:
        raise EigenSolverError(f"symmetric eigenvalue solve failed: {exc}") from exc
    return float(values[0]), float(values[-1])
