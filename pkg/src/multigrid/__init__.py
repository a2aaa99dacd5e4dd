"""
Multigrid Package
Geometric multigrid for the block systems: hierarchy construction, V/W cycles
and the stationary multigrid solver.
"""

from .solve_report import SolveReport, convergence_factor
from .hierarchy import CycleType, MGHierarchy, MGLevel, block_prolongation, build_hierarchy
from .cycle import mg_cycle, mg_solve, random_initial_guess

__all__ = [
    "SolveReport",
    "convergence_factor",
    "CycleType",
    "MGHierarchy",
    "MGLevel",
    "block_prolongation",
    "build_hierarchy",
    "mg_cycle",
    "mg_solve",
    "random_initial_guess",
]
