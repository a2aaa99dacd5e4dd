"""
Smoother Factory
"""

from typing import Callable

import numpy as np

from ..assembly.discrete_problem import DiscreteProblem
from ..block_system.block_operator import BlockOperator
from .collective_smoothers import CollectiveSmoother
from .distributive_smoother import DistributiveSmoother
from .smoother_config import SmootherConfig, SmootherKind

Smoother = Callable[[np.ndarray, np.ndarray, int], np.ndarray]


def make_smoother(problem: DiscreteProblem, op: BlockOperator, config: SmootherConfig) -> Smoother:
    """Smoother callable (x, rhs, sweeps) -> x for the operator `op` of `problem`."""
    if config.kind is SmootherKind.DISTRIBUTIVE:
        return DistributiveSmoother(problem, op.variant, config)
    return CollectiveSmoother(op, config)
