"""
Mass-Lumping Checks
Numerical checks of the mass-lumping estimates: negative semidefiniteness of
M - M̄, the two-sided norm equivalence, h^2 scaling of the lumping error, and
eigenvalue scaling of the stiffness and mass matrices.
"""

import logging
from typing import Dict, List, Sequence

import numpy as np
import scipy.linalg as la

from ..assembly.coefficients import Coefficient
from ..assembly.discrete_problem import DiscreteProblem, ProblemSpec, assemble_problem
from ..assembly.fem_assembly import assemble_stiffness
from ..linalg.dense_eigen import check_dense_cap
from .spectrum_report import BoundCheck
from .spectrum_verify import estimate_C1

logger = logging.getLogger(__name__)


def delta_mass_nsd(problem: DiscreteProblem, samples: int = 200, seed: int = 0) -> BoundCheck:
    """max over random u of u^T (M - M̄) u / |u|^2 must not exceed 1e-12."""
    rng = np.random.default_rng(seed)
    delta = problem.delta_mass()
    worst = -np.inf
    for _ in range(samples):
        u = rng.standard_normal(problem.n)
        worst = max(worst, float(u @ (delta @ u)) / float(u @ u))
    return BoundCheck.at_most("u^T (M - M̄) u <= 0", worst, 1e-12)


def norm_equivalence(problem: DiscreteProblem, samples: int = 200, seed: int = 0) -> List[BoundCheck]:
    """C1 (M̄u,u) <= (Mu,u) <= (M̄u,u) for random u, with the measured C1."""
    C1 = estimate_C1(problem.M, problem.Mbar)
    rng = np.random.default_rng(seed)
    lower_slack = np.inf
    upper_slack = np.inf
    for _ in range(samples):
        u = rng.standard_normal(problem.n)
        mass = float(u @ (problem.M @ u))
        lumped = float(u @ (problem.Mbar @ u))
        lower_slack = min(lower_slack, (mass - C1 * lumped) / lumped)
        upper_slack = min(upper_slack, (lumped - mass) / lumped)
    return [
        BoundCheck.below("measured C1 in (0, 1)", abs(C1 - 0.5), 0.5),
        BoundCheck.at_least("C1 (M̄u,u) <= (Mu,u)", lower_slack, -1e-12),
        BoundCheck.at_least("(Mu,u) <= (M̄u,u)", upper_slack, -1e-12),
    ]


def lumping_error_constant(problem: DiscreteProblem) -> float:
    """
    sup over P1 pairs of |(u,v) - (u,v)_h| / (h^2 |u|_1 |v|_1).

    The supremum is the spectral radius of the pencil (M - M̄, K) with K the
    Laplace stiffness matrix, divided by h^2.
    """
    check_dense_cap(problem.n)
    laplace = assemble_stiffness(problem.mesh, problem.dofmap, Coefficient.constant(1.0)).toarray()
    values = la.eigh(problem.delta_mass().toarray(), laplace, eigvals_only=True)
    return float(np.abs(values).max()) / problem.h ** 2


def _consecutive_ratios(values: Sequence[float]) -> List[float]:
    return [b / a for a, b in zip(values[:-1], values[1:])]


def _ratio_checks(name: str, values: Sequence[float], low: float, high: float) -> List[BoundCheck]:
    checks = []
    for index, ratio in enumerate(_consecutive_ratios(values)):
        margin = min(ratio - low, high - ratio)
        checks.append(BoundCheck(f"{name} ratio {index + 1}", bool(margin >= 0.0), float(margin)))
    return checks


def lumping_error_scaling(levels: Sequence[int] = (2, 3, 4, 5), spec: ProblemSpec = None) -> Dict[str, object]:
    """Lumping error constant per level; consecutive ratios must stay in [0.5, 2]."""
    spec = spec or ProblemSpec.example("unit")
    constants = [lumping_error_constant(assemble_problem(level, spec, 1.0)) for level in levels]
    checks = _ratio_checks("lumping error / h^2", constants, 0.5, 2.0)
    return {"levels": list(levels), "constants": constants, "checks": checks}


def eigenvalue_scaling(levels: Sequence[int] = (2, 3, 4, 5), spec: ProblemSpec = None) -> Dict[str, object]:
    """
    lambda_max(A) and lambda_min(M) / h^2 per level; both must be level
    independent within a factor 2 between consecutive levels.
    """
    spec = spec or ProblemSpec.example(1)
    lam_max_a = []
    lam_min_m = []
    for level in levels:
        problem = assemble_problem(level, spec, 1.0)
        check_dense_cap(problem.n)
        lam_max_a.append(float(la.eigvalsh(problem.A.toarray())[-1]))
        lam_min_m.append(float(la.eigvalsh(problem.M.toarray())[0]) / problem.h ** 2)
    checks = _ratio_checks("lambda_max(A)", lam_max_a, 0.5, 2.0)
    checks += _ratio_checks("lambda_min(M)/h^2", lam_min_m, 0.5, 2.0)
    return {"levels": list(levels), "lambda_max_A": lam_max_a, "lambda_min_M_over_h2": lam_min_m,
            "checks": checks}


def c1_stability(levels: Sequence[int] = (2, 3, 4), spec: ProblemSpec = None) -> Dict[str, object]:
    """Measured C1 per level; values must agree within a factor 1.2."""
    spec = spec or ProblemSpec.example("unit")
    values = [estimate_C1(p.M, p.Mbar) for p in (assemble_problem(level, spec, 1.0) for level in levels)]
    spread = max(values) / min(values)
    checks = [BoundCheck.at_most("C1 spread across levels", spread, 1.2)]
    return {"levels": list(levels), "C1": values, "checks": checks}
