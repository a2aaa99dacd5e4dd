"""
Smoothers Package
Collective (pointwise 2x2) Jacobi and Gauss-Seidel relaxation of the block
system, and the distributive smoother that decouples the lumped systems.
"""

from .smoother_config import SmootherConfig, SmootherKind
from .collective_smoothers import CollectiveSmoother, collective_gs_sweep, collective_jacobi_sweep
from .distributive_smoother import DistributiveSmoother, distributive_sweep
from .factory import Smoother, make_smoother

__all__ = [
    "SmootherConfig",
    "SmootherKind",
    "CollectiveSmoother",
    "collective_gs_sweep",
    "collective_jacobi_sweep",
    "DistributiveSmoother",
    "distributive_sweep",
    "Smoother",
    "make_smoother",
]
