"""
Uniform Refinement
Splits every triangle into four by edge midpoints and records how fine vertices
inherit values from the coarse mesh (the P1 prolongation).
"""

from dataclasses import dataclass
from typing import Tuple

import numpy as np
import scipy.sparse as sp

from .lshape_mesh import Mesh, _edge_table, renumber


@dataclass(frozen=True, eq=False)
class TransferMap:
    """
    Fine-to-coarse vertex relation of one refinement step.

    A fine vertex that coincides with a coarse vertex has parents (p, p) and
    weights (1, 0); an edge midpoint has its two edge endpoints, each with weight 1/2.
    """
    parents: np.ndarray
    weights: np.ndarray
    n_coarse: int

    @property
    def n_fine(self) -> int:
        return len(self.parents)

    def prolongation(self) -> sp.csr_matrix:
        """Scalar P1 prolongation on all vertices, shape (n_fine, n_coarse)."""
        rows = np.repeat(np.arange(self.n_fine), 2)
        matrix = sp.coo_matrix(
            (self.weights.ravel(), (rows, self.parents.ravel())),
            shape=(self.n_fine, self.n_coarse),
        ).tocsr()
        matrix.eliminate_zeros()
        return matrix

    def restricted(self, fine_dofs: np.ndarray, coarse_dofs: np.ndarray) -> sp.csr_matrix:
        """Prolongation between free dofs only, columns of fixed coarse vertices dropped."""
        return self.prolongation()[fine_dofs][:, coarse_dofs].tocsr()


def refine_uniform(mesh: Mesh) -> Tuple[Mesh, TransferMap]:
    """
    Refine a mesh once.

    Each triangle (a, b, c) with midpoints m_ab, m_bc, m_ca becomes
    (a, m_ab, m_ca), (m_ab, b, m_bc), (m_ca, m_bc, c), (m_ab, m_bc, m_ca),
    all counterclockwise. Midpoints shared by neighbours are created once.

    Args:
        mesh: Coarse mesh

    Returns:
        (fine mesh in lexicographic order, transfer map coarse -> fine)
    """
    n_coarse = mesh.n_vertices
    tris = mesh.triangles
    edges, edge_of, _ = _edge_table(tris)
    midpoints = 0.5 * (mesh.vertices[edges[:, 0]] + mesh.vertices[edges[:, 1]])
    vertices = np.vstack([mesh.vertices, midpoints])

    m_ab = n_coarse + edge_of[0]
    m_bc = n_coarse + edge_of[1]
    m_ca = n_coarse + edge_of[2]
    a, b, c = tris[:, 0], tris[:, 1], tris[:, 2]
    children = np.concatenate([
        np.stack([a, m_ab, m_ca], axis=1),
        np.stack([m_ab, b, m_bc], axis=1),
        np.stack([m_ca, m_bc, c], axis=1),
        np.stack([m_ab, m_bc, m_ca], axis=1),
    ])
    tags = np.concatenate([mesh.triangle_tags] * 4)

    own = np.arange(n_coarse)
    parents = np.vstack([np.stack([own, own], axis=1), edges])
    weights = np.vstack([
        np.tile([1.0, 0.0], (n_coarse, 1)),
        np.full((len(edges), 2), 0.5),
    ])

    vertices, children, new_index = renumber(vertices, children)
    order = np.argsort(new_index)
    fine = Mesh.from_arrays(vertices, children, level=mesh.level + 1, triangle_tags=tags)
    transfer = TransferMap(
        parents=parents[order].astype(np.int64),
        weights=weights[order],
        n_coarse=n_coarse,
    )
    return fine, transfer
