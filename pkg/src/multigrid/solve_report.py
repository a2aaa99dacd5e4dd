"""
Solve Report
Outcome of one iterative solve, serializable to JSON.
"""

from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np
from dataclasses_json import Exclude, config, dataclass_json


def convergence_factor(residuals: List[float]) -> float:
    """Geometric-mean contraction (r_k / r_0)^(1/k); 0.0 before the first iteration."""
    k = len(residuals) - 1
    if k < 1 or residuals[0] == 0.0:
        return 0.0
    return float((residuals[-1] / residuals[0]) ** (1.0 / k))


@dataclass_json
@dataclass
class SolveReport:
    """
    Attributes:
        iterations: Iterations (cycles or Krylov steps) performed
        converged: Relative residual dropped below tol within maxit
        residuals: Euclidean residual norms, residuals[0] the initial one
        conv_factor: Geometric-mean contraction per iteration
        wall_ms: Elapsed wall time in milliseconds
        solution: Final iterate, kept out of the JSON form
        breakdown: Krylov solve stopped on an invariant subspace, kept out of the JSON form
    """
    iterations: int
    converged: bool
    residuals: List[float]
    conv_factor: float
    wall_ms: float
    solution: Optional[np.ndarray] = field(
        default=None, repr=False, compare=False,
        metadata=config(exclude=Exclude.ALWAYS),
    )
    breakdown: bool = field(default=False, metadata=config(exclude=Exclude.ALWAYS))

    @classmethod
    def from_history(cls, residuals: List[float], converged: bool, wall_ms: float,
                     solution: Optional[np.ndarray] = None) -> "SolveReport":
        residuals = [float(r) for r in residuals]
        return cls(
            iterations=len(residuals) - 1,
            converged=bool(converged),
            residuals=residuals,
            conv_factor=convergence_factor(residuals),
            wall_ms=float(wall_ms),
            solution=solution,
        )

    @property
    def relative_residual(self) -> float:
        if not self.residuals or self.residuals[0] == 0.0:
            return 0.0
        return self.residuals[-1] / self.residuals[0]
