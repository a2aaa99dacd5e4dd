"""
Degree-of-Freedom Map
Decides which mesh vertices carry unknowns under a given boundary condition.
"""

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .lshape_mesh import Mesh


class BcKind(Enum):
    """Boundary condition variants supported on the L-shaped domain"""
    ALL_DIRICHLET = "all_dirichlet"
    MIXED_CORNER = "mixed_corner"


@dataclass(frozen=True)
class BcSpec:
    """
    Boundary condition selection.

    ALL_DIRICHLET fixes every boundary vertex. MIXED_CORNER makes the two
    re-entrant edges natural (Neumann) and keeps the rest Dirichlet; the corner
    vertex (0, 0) and the edge endpoints stay fixed.
    """
    kind: BcKind = BcKind.ALL_DIRICHLET

    @classmethod
    def from_name(cls, name: str) -> "BcSpec":
        try:
            return cls(BcKind(name.lower()))
        except ValueError as exc:
            valid = ", ".join(k.value for k in BcKind)
            raise ValueError(f"unknown boundary condition '{name}', expected one of: {valid}") from exc

    @property
    def name(self) -> str:
        return self.kind.value

    def natural_mask(self, vertices: np.ndarray) -> np.ndarray:
        """Vertices lying on the open Neumann segments."""
        if self.kind is BcKind.ALL_DIRICHLET:
            return np.zeros(len(vertices), dtype=bool)
        x, y = vertices[:, 0], vertices[:, 1]
        on_vertical = (x == 0.0) & (y > 0.0) & (y < 1.0)
        on_horizontal = (y == 0.0) & (x > 0.0) & (x < 1.0)
        return on_vertical | on_horizontal


@dataclass(frozen=True, eq=False)
class DofMap:
    """Free and fixed vertex indices, both sorted ascending."""
    free: np.ndarray
    fixed: np.ndarray
    n_vertices: int

    @property
    def n_free(self) -> int:
        """Number of unknowns N_h per field."""
        return len(self.free)

    def vertex_to_dof(self) -> np.ndarray:
        """Dof index of every vertex, -1 for fixed ones."""
        index = np.full(self.n_vertices, -1, dtype=np.int64)
        index[self.free] = np.arange(self.n_free)
        return index

    def extend(self, values: np.ndarray) -> np.ndarray:
        """Scatter free-dof values to all vertices, zero on fixed ones."""
        full = np.zeros(self.n_vertices, dtype=np.asarray(values).dtype)
        full[self.free] = values
        return full


def classify_dofs(mesh: Mesh, bc: BcSpec) -> DofMap:
    """
    Split mesh vertices into free and fixed.

    Args:
        mesh: Mesh to classify
        bc: Boundary condition

    Returns:
        DofMap whose free set is the interior plus any natural-boundary vertices
    """
    on_boundary = np.zeros(mesh.n_vertices, dtype=bool)
    on_boundary[mesh.boundary_vertices()] = True
    fixed = on_boundary & ~bc.natural_mask(mesh.vertices)
    return DofMap(
        free=np.flatnonzero(~fixed),
        fixed=np.flatnonzero(fixed),
        n_vertices=mesh.n_vertices,
    )
