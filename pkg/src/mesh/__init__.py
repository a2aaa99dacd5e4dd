"""
Mesh Package
Triangulations of the L-shaped domain, uniform refinement with P1 transfer maps,
and classification of degrees of freedom by boundary condition.
"""

from .lshape_mesh import Mesh, base_lshape_mesh, build_lshape_mesh, build_mesh_hierarchy
from .refinement import TransferMap, refine_uniform
from .dof_map import BcKind, BcSpec, DofMap, classify_dofs
from .mesh_io import dump_mesh_csv

__all__ = [
    "Mesh",
    "base_lshape_mesh",
    "build_lshape_mesh",
    "build_mesh_hierarchy",
    "TransferMap",
    "refine_uniform",
    "BcKind",
    "BcSpec",
    "DofMap",
    "classify_dofs",
    "dump_mesh_csv",
]
