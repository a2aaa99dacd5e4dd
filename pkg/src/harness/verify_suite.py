"""
Verification Suites
Property checks at small dense scale. Each suite returns a flat list of
BoundChecks; a suite passes iff every check is satisfied.
"""

import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Sequence

import numpy as np
from dataclasses_json import dataclass_json

from ..assembly.discrete_problem import ProblemSpec, assemble_problem
from ..spectrum.lemma_checks import (
    c1_stability,
    delta_mass_nsd,
    eigenvalue_scaling,
    lumping_error_scaling,
    norm_equivalence,
)
from ..spectrum.smw import verify_smw_identity
from ..spectrum.spectrum_report import BoundCheck
from ..spectrum.spectrum_verify import (
    eigenpair_identity_residuals,
    preconditioned_spectrum,
    spectrum_of_X,
    verify_bd_bound,
)
from ..utils.errors import ConfigurationError

logger = logging.getLogger(__name__)

VERIFY_LEVELS = (2, 3)
SCALING_LEVELS = (2, 3, 4, 5)
THEOREM_TAUS = (1.0, 1e-1, 1e-2, 1e-3)
SMALL_TAUS = (1e-6, 1e-7)


@dataclass_json
@dataclass
class VerifyReport:
    suite: str
    checks: List[BoundCheck] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(check.satisfied for check in self.checks)

    @property
    def n_failed(self) -> int:
        return sum(not check.satisfied for check in self.checks)


def _tagged(prefix: str, checks: Sequence[BoundCheck]) -> List[BoundCheck]:
    return [BoundCheck(f"{prefix}: {check.name}", check.satisfied, check.margin) for check in checks]


def lemma_checks(levels: Sequence[int] = VERIFY_LEVELS,
                 scaling_levels: Sequence[int] = SCALING_LEVELS) -> List[BoundCheck]:
    """Lumping-error sign, two-sided norm equivalence, h^2 scaling and level-stable C1."""
    checks: List[BoundCheck] = []
    spec = ProblemSpec.example(1)
    for level in levels:
        problem = assemble_problem(level, spec, 1.0)
        checks += _tagged(f"level {level}", [delta_mass_nsd(problem)] + norm_equivalence(problem))
    checks += lumping_error_scaling(scaling_levels)["checks"]
    checks += eigenvalue_scaling(scaling_levels)["checks"]
    checks += c1_stability(tuple(levels) + (max(levels) + 1,))["checks"]
    return checks


def theorem_checks(levels: Sequence[int] = VERIFY_LEVELS, taus: Sequence[float] = THEOREM_TAUS) -> List[BoundCheck]:
    """
    Spectral inclusions of the preconditioned systems.

    - rho(𝓑^-1 𝓐) < 2 for every tau >= h^2 (Example 1).
    - a = b = 1: spectrum of 𝓑̃^-1 𝓐 in (C1, 1] with eigenvalue 1 at least N_h
      times, and spectrum of X in (C1 - 1, 0].
    - The eigenvalues of 𝓑^-1 𝓐 satisfy the modulus identity built from their eigenvectors.
    - rho(E_d) < 1 for tiny tau on level 2, and rho(E_d) is linear in tau.
    """
    checks: List[BoundCheck] = []
    example = ProblemSpec.example(1)
    unit = ProblemSpec.example("unit")
    for level in levels:
        base = assemble_problem(level, example, 1.0)
        unit_base = assemble_problem(level, unit, 1.0)
        for tau in taus:
            prefix = f"level {level} tau {tau:g}"
            if tau >= base.h ** 2:
                checks += _tagged(prefix + " B", preconditioned_spectrum(base.with_tau(tau), "B").bound_checks)
            unit_problem = unit_base.with_tau(tau)
            checks += _tagged(prefix + " Btilde", preconditioned_spectrum(unit_problem, "Btilde").bound_checks)
            checks += _tagged(prefix + " X", spectrum_of_X(unit_problem).bound_checks)
        residuals = eigenpair_identity_residuals(base.with_tau(1e-1))
        checks.append(BoundCheck.at_most(f"level {level} eigenpair modulus identity",
                                         float(np.max(residuals)), 1e-6))

    small = assemble_problem(min(levels), example, 1.0)
    radii = []
    for tau in SMALL_TAUS:
        report = verify_bd_bound(small, tau)
        radii.append(report.rho)
        checks += _tagged(f"level {small.level} tau {tau:g} Bd", report.bound_checks)
    ratio = (radii[0] / radii[1]) / (SMALL_TAUS[0] / SMALL_TAUS[1])
    checks.append(BoundCheck.at_most("rho(E_d) linear in tau", abs(ratio - 1.0), 0.01))
    return checks


def smw_checks() -> List[BoundCheck]:
    return [verify_smw_identity(n=10, k=3, trials=20)]


SUITES: Dict[str, List[Callable[[], List[BoundCheck]]]] = {
    "lemmas": [lemma_checks],
    "theorems": [theorem_checks],
    "smw": [smw_checks],
    "all": [lemma_checks, theorem_checks, smw_checks],
}


def run_suite(suite: str) -> VerifyReport:
    """
    Run a named suite: lemmas, theorems, smw or all.

    Raises:
        ConfigurationError: for an unknown suite name
    """
    key = suite.strip().lower()
    if key not in SUITES:
        raise ConfigurationError(f"unknown suite '{suite}', expected one of {', '.join(SUITES)}", ["suite"])
    report = VerifyReport(suite=key)
    for runner in SUITES[key]:
        report.checks += runner()
    logger.info("suite %s: %d checks, %d failed", key, len(report.checks), report.n_failed)
    return report
