"""
Assembly Package
P1 finite-element mass and stiffness matrices on free dofs, lumped mass,
coefficient fields, and the assembled discrete problem.
"""

from .coefficients import Coefficient, CoefficientKind
from .fem_assembly import assemble_mass, assemble_stiffness, load_vector, lump
from .discrete_problem import DiscreteProblem, ProblemSpec, assemble_problem

__all__ = [
    "Coefficient",
    "CoefficientKind",
    "assemble_mass",
    "assemble_stiffness",
    "load_vector",
    "lump",
    "DiscreteProblem",
    "ProblemSpec",
    "assemble_problem",
]
