"""
Schur Operator
Matrix-free action and O(nnz) diagonal of M + tau^2 A M̄^-1 B, the operator
left in the upper-left corner after distributing the lumped preconditioners.
"""

import numpy as np
import scipy.sparse as sp

from ..assembly.discrete_problem import DiscreteProblem
from ..linalg.sparse_ops import DiagonalMatrix
from ..utils.errors import DimensionMismatchError, PositivityError


def _leading_mass(problem: DiscreteProblem, lumped: bool):
    return problem.Mbar if lumped else problem.M


def schur_apply(problem: DiscreteProblem, x: np.ndarray, lumped: bool = False) -> np.ndarray:
    """
    M x + tau^2 A (M̄^-1 (B x)) by three sparse products.

    Args:
        problem: Assembled problem
        x: Vector of length N_h
        lumped: Use M̄ for the leading mass term (distributed 𝓑 system)
    """
    x = np.asarray(x)
    if x.shape[0] != problem.n:
        raise DimensionMismatchError("schur_apply", problem.n, x.shape[0])
    mass = _leading_mass(problem, lumped)
    return mass @ x + problem.tau ** 2 * (problem.A @ problem.Mbar.solve(problem.B @ x))


def schur_diagonal(problem: DiscreteProblem, lumped: bool = False) -> DiagonalMatrix:
    """
    d_i = M_ii + tau^2 sum_k A_ik B_ki / M̄_kk without forming the product.

    Raises:
        PositivityError: if an entry is not strictly positive
    """
    scaled = sp.csr_matrix(problem.A @ sp.diags(1.0 / problem.Mbar.diag))
    cross = np.asarray(scaled.multiply(problem.B.T).sum(axis=1)).ravel()
    diag = _leading_mass(problem, lumped).diagonal() + problem.tau ** 2 * cross
    bad = np.flatnonzero(~(diag > 0.0))
    if bad.size:
        raise PositivityError(f"Schur diagonal entry {bad[0]} is {diag[bad[0]]!r}")
    return DiagonalMatrix(diag)


def schur_matrix(problem: DiscreteProblem, lumped: bool = False) -> sp.csr_matrix:
    """Explicit Schur matrix, for direct inner solves and dense checks."""
    mass = _leading_mass(problem, lumped)
    mass = mass.tocsr() if isinstance(mass, DiagonalMatrix) else mass
    product = problem.A @ sp.diags(1.0 / problem.Mbar.diag) @ problem.B
    return sp.csr_matrix(mass + problem.tau ** 2 * product)
