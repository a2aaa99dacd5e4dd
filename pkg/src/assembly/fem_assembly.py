"""
P1 Assembly
Vectorized assembly of mass and stiffness matrices on the free dofs of a mesh.
Element matrices are computed for all triangles at once and scattered as
coordinate triplets.
"""

import logging
from typing import Callable, Optional

import numpy as np
import scipy.sparse as sp

from ..linalg.sparse_ops import DiagonalMatrix, build_csr
from ..mesh.dof_map import DofMap
from ..mesh.lshape_mesh import Mesh
from ..utils.errors import AssemblyError
from .coefficients import Coefficient

logger = logging.getLogger(__name__)

_MASS_PATTERN = (np.ones((3, 3)) + np.eye(3)) / 12.0


def _scatter(mesh: Mesh, dofs: DofMap, local: np.ndarray) -> sp.csr_matrix:
    """Sum (m, 3, 3) element matrices into the free-dof matrix."""
    index = dofs.vertex_to_dof()[mesh.triangles]
    rows = np.repeat(index, 3, axis=1).reshape(-1, 3, 3)
    cols = np.tile(index, (1, 3)).reshape(-1, 3, 3)
    keep = (rows >= 0) & (cols >= 0)
    n = dofs.n_free
    return build_csr(rows[keep], cols[keep], local[keep], (n, n))


def _opposite_edges(mesh: Mesh) -> np.ndarray:
    """Edge vectors opposite each local vertex, shape (m, 3, 2)."""
    p = mesh.vertices[mesh.triangles]
    return np.stack([p[:, 2] - p[:, 1], p[:, 0] - p[:, 2], p[:, 1] - p[:, 0]], axis=1)


def assemble_mass(mesh: Mesh, dofs: DofMap) -> sp.csr_matrix:
    """
    Consistent P1 mass matrix M_ij = (phi_i, phi_j) on free dofs.

    Element matrix is |K|/12 * [[2,1,1],[1,2,1],[1,1,2]].
    """
    area = mesh.signed_areas()
    local = area[:, None, None] * _MASS_PATTERN[None, :, :]
    return _scatter(mesh, dofs, local)


def assemble_stiffness(mesh: Mesh, dofs: DofMap, coefficient: Coefficient) -> sp.csr_matrix:
    """
    Stiffness matrix (c grad phi_i, grad phi_j) on free dofs.

    The coefficient is sampled once per triangle at its barycenter.

    Args:
        mesh: Mesh
        dofs: Free/fixed classification
        coefficient: Diffusion coefficient field

    Returns:
        Symmetric N_h x N_h CSR matrix

    Raises:
        AssemblyError: if the coefficient is not strictly positive at some barycenter
    """
    centers = mesh.barycenters()
    values = coefficient(centers[:, 0], centers[:, 1])
    bad = np.flatnonzero(~(values > 0.0) | ~np.isfinite(values))
    if bad.size:
        raise AssemblyError(int(bad[0]), float(values[bad[0]]))

    area = mesh.signed_areas()
    edges = _opposite_edges(mesh)
    # grad phi_i = rot(e_i) / (2|K|), so |K| grad phi_i . grad phi_j = e_i . e_j / (4|K|)
    local = np.einsum("tik,tjk->tij", edges, edges) / (4.0 * area)[:, None, None]
    local *= values[:, None, None]
    return _scatter(mesh, dofs, local)


def _vertex_quadrature(mesh: Mesh, nodal: np.ndarray) -> np.ndarray:
    """sum over K containing vertex i of |K|/3 * nodal_i, for all vertices."""
    area = mesh.signed_areas()
    weights = np.repeat(area / 3.0, 3)
    patch = np.bincount(mesh.triangles.ravel(), weights=weights, minlength=mesh.n_vertices)
    return patch * nodal


def lump(M: sp.spmatrix, mesh: Optional[Mesh] = None, dofs: Optional[DofMap] = None) -> DiagonalMatrix:
    """
    Lumped mass matrix.

    With a mesh, M̄_ii is the vertex-quadrature weight sum of |K|/3 over the
    triangles K containing free vertex i, which equals the full-matrix row sum
    including fixed columns. Without a mesh it falls back to row sums of M.
    """
    if mesh is None or dofs is None:
        return DiagonalMatrix(np.asarray(M.sum(axis=1)).ravel())
    weights = _vertex_quadrature(mesh, np.ones(mesh.n_vertices))[dofs.free]
    if M is not None and M.shape[0] != dofs.n_free:
        raise ValueError(f"mass matrix has {M.shape[0]} rows, dof map has {dofs.n_free}")
    return DiagonalMatrix(weights)


def load_vector(mesh: Mesh, dofs: DofMap,
                source: Optional[Callable[[np.ndarray, np.ndarray], np.ndarray]] = None) -> np.ndarray:
    """
    Right-hand side F_i = sum |K|/3 f(z_i) with the lumping quadrature; f = 1 by default.
    """
    if source is None:
        nodal = np.ones(mesh.n_vertices)
    else:
        nodal = np.asarray(source(mesh.vertices[:, 0], mesh.vertices[:, 1]), dtype=float)
    return _vertex_quadrature(mesh, nodal)[dofs.free]
