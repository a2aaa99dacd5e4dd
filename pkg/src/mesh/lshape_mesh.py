"""
L-shaped Mesh
Triangulation of the L-shaped domain (-1, 1)^2 minus [0, 1)^2 and its uniform refinements.
Vertices are kept in lexicographic (y, x) order so sweeps over dofs are reproducible.
"""

import logging
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

logger = logging.getLogger(__name__)

# Unit squares of the L, keyed by the tag their descendants carry.
BASE_SQUARES = {
    "sw": (-1.0, -1.0),
    "se": (0.0, -1.0),
    "nw": (-1.0, 0.0),
}


def _readonly(array: np.ndarray) -> np.ndarray:
    array.setflags(write=False)
    return array


def boundary_tag(x: float, y: float) -> str:
    """Name the straight L-boundary segment containing (x, y), "other" off the L."""
    if y == -1.0:
        return "bottom"
    if x == -1.0:
        return "left"
    if y == 1.0:
        return "top"
    if x == 1.0:
        return "right"
    if x == 0.0 and y > 0.0:
        return "reentrant_vertical"
    if y == 0.0 and x > 0.0:
        return "reentrant_horizontal"
    return "other"


def _edge_table(triangles: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Unique undirected edges, the edge index of each local triangle edge, and use counts."""
    m = len(triangles)
    local = np.concatenate([triangles[:, [0, 1]], triangles[:, [1, 2]], triangles[:, [2, 0]]])
    edges, inverse, counts = np.unique(
        np.sort(local, axis=1), axis=0, return_inverse=True, return_counts=True
    )
    return edges, np.asarray(inverse).ravel().reshape(3, m), counts


def _boundary_edges(vertices: np.ndarray, triangles: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    edges, _, counts = _edge_table(triangles)
    boundary = edges[counts == 1]
    mid = 0.5 * (vertices[boundary[:, 0]] + vertices[boundary[:, 1]])
    tags = np.array([boundary_tag(float(x), float(y)) for x, y in mid], dtype=object)
    return boundary, tags


@dataclass(frozen=True, eq=False)
class Mesh:
    """
    Conforming triangulation of the L-shaped domain.

    Attributes:
        vertices: (n, 2) coordinates in lexicographic (y, x) order
        triangles: (m, 3) counterclockwise vertex indices
        level: number of uniform refinements of the base mesh
        boundary_edges: (k, 2) vertex pairs of edges used by exactly one triangle
        boundary_tags: segment tag per boundary edge
        triangle_tags: base square ("sw", "se", "nw") each triangle descends from
    """
    vertices: np.ndarray
    triangles: np.ndarray
    level: int
    boundary_edges: np.ndarray
    boundary_tags: np.ndarray
    triangle_tags: np.ndarray

    @classmethod
    def from_arrays(cls, vertices: np.ndarray, triangles: np.ndarray, level: int,
                    triangle_tags: np.ndarray) -> "Mesh":
        """Build a mesh, deriving the boundary edges from the triangle list."""
        vertices = np.ascontiguousarray(vertices, dtype=float)
        triangles = np.ascontiguousarray(triangles, dtype=np.int64)
        boundary, tags = _boundary_edges(vertices, triangles)
        return cls(
            vertices=_readonly(vertices),
            triangles=_readonly(triangles),
            level=level,
            boundary_edges=_readonly(boundary),
            boundary_tags=_readonly(tags),
            triangle_tags=_readonly(np.asarray(triangle_tags, dtype=object)),
        )

    @property
    def h(self) -> float:
        """Leg length of the square cells, 2^-level."""
        return 2.0 ** (-self.level)

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_triangles(self) -> int:
        return len(self.triangles)

    def signed_areas(self) -> np.ndarray:
        p0 = self.vertices[self.triangles[:, 0]]
        p1 = self.vertices[self.triangles[:, 1]]
        p2 = self.vertices[self.triangles[:, 2]]
        d1 = p1 - p0
        d2 = p2 - p0
        return 0.5 * (d1[:, 0] * d2[:, 1] - d1[:, 1] * d2[:, 0])

    def barycenters(self) -> np.ndarray:
        return self.vertices[self.triangles].mean(axis=1)

    def edge_use_counts(self) -> np.ndarray:
        """Number of triangles sharing each unique edge."""
        return _edge_table(self.triangles)[2]

    def boundary_vertices(self) -> np.ndarray:
        return np.unique(self.boundary_edges)

    def is_valid(self) -> bool:
        """Positive areas, conformity, and the 6*4^level triangle count."""
        return bool(
            np.all(self.signed_areas() > 0.0)
            and np.all(np.isin(self.edge_use_counts(), (1, 2)))
            and self.n_triangles == 6 * 4 ** self.level
        )


def lexicographic_order(vertices: np.ndarray) -> np.ndarray:
    """Permutation sorting vertices by y, then x."""
    return np.lexsort((vertices[:, 0], vertices[:, 1]))


def renumber(vertices: np.ndarray, triangles: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Put vertices in lexicographic order.

    Returns:
        (sorted vertices, remapped triangles, new index of every old vertex)
    """
    order = lexicographic_order(vertices)
    new_index = np.empty(len(vertices), dtype=np.int64)
    new_index[order] = np.arange(len(vertices))
    return vertices[order], new_index[triangles], new_index


def base_lshape_mesh() -> Mesh:
    """
    Level-0 mesh: the three unit squares of the L, each split along the
    lower-left to upper-right diagonal (8 vertices, 6 triangles).
    """
    points = {}
    triangles = []
    tags = []

    def vertex(x: float, y: float) -> int:
        return points.setdefault((x, y), len(points))

    for tag, (x0, y0) in BASE_SQUARES.items():
        ll = vertex(x0, y0)
        lr = vertex(x0 + 1.0, y0)
        ur = vertex(x0 + 1.0, y0 + 1.0)
        ul = vertex(x0, y0 + 1.0)
        triangles += [(ll, lr, ur), (ll, ur, ul)]
        tags += [tag, tag]

    coords = np.array(list(points.keys()), dtype=float)
    vertices, tris, _ = renumber(coords, np.array(triangles, dtype=np.int64))
    return Mesh.from_arrays(vertices, tris, level=0, triangle_tags=np.array(tags, dtype=object))


def build_lshape_mesh(level: int) -> Mesh:
    """
    Mesh obtained from the base mesh by `level` uniform refinements.

    Args:
        level: refinement depth, h = 2^-level

    Returns:
        The level-`level` mesh
    """
    if level < 0:
        raise ValueError(f"level must be nonnegative, got {level}")
    from .refinement import refine_uniform

    mesh = base_lshape_mesh()
    for _ in range(level):
        mesh, _ = refine_uniform(mesh)
    return mesh


def build_mesh_hierarchy(fine_level: int, coarse_level: int = 0) -> Tuple[List[Mesh], list]:
    """
    Nested meshes from coarse_level to fine_level.

    Returns:
        (meshes coarse to fine, transfer maps where transfers[i] maps meshes[i] to meshes[i+1])
    """
    if not 0 <= coarse_level <= fine_level:
        raise ValueError(f"need 0 <= coarse_level <= fine_level, got {coarse_level}, {fine_level}")
    from .refinement import refine_uniform

    mesh = build_lshape_mesh(coarse_level)
    meshes = [mesh]
    transfers = []
    for _ in range(coarse_level, fine_level):
        mesh, transfer = refine_uniform(mesh)
        meshes.append(mesh)
        transfers.append(transfer)
    logger.debug("built mesh hierarchy levels %d..%d", coarse_level, fine_level)
    return meshes, transfers
