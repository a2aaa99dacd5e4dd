"""
Krylov Package
Flexible GMRES with right preconditioning by exact, multigrid or Gauss-Seidel
approximations of the block preconditioners.
"""

from ..multigrid.solve_report import SolveReport
from .fgmres import fgmres
from .preconditioners import (
    InnerKind,
    InnerSolver,
    Preconditioner,
    build_preconditioner,
    gs_block_diagonal_preconditioner,
    lu_preconditioner,
    mg_preconditioner,
)

__all__ = [
    "SolveReport",
    "fgmres",
    "InnerKind",
    "InnerSolver",
    "Preconditioner",
    "build_preconditioner",
    "gs_block_diagonal_preconditioner",
    "lu_preconditioner",
    "mg_preconditioner",
]
