"""
Discrete Problem
The assembled matrices of one time-step system on one mesh level, with tau held
separately so tau sweeps reuse the assembly.
"""

import logging
from dataclasses import dataclass, field, replace
from typing import Optional, Union

import numpy as np
import scipy.sparse as sp

from ..linalg.sparse_ops import DiagonalMatrix
from ..mesh.dof_map import BcSpec, DofMap, classify_dofs
from ..mesh.lshape_mesh import Mesh, build_lshape_mesh
from .coefficients import Coefficient
from .fem_assembly import assemble_mass, assemble_stiffness, load_vector, lump

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ProblemSpec:
    """
    Coefficient pair and boundary condition of a model problem.

    Attributes:
        a: Coefficient of the v-equation stiffness A
        b: Coefficient of the u-equation stiffness B
        bc: Boundary condition
        name: Label written to result rows ("1", "2", "unit" or "custom")
    """
    a: Coefficient
    b: Coefficient
    bc: BcSpec = field(default_factory=BcSpec)
    name: str = "custom"

    @classmethod
    def example(cls, example: Union[int, str], bc: Optional[BcSpec] = None) -> "ProblemSpec":
        """
        Named problems: 1 (nice coefficients), 2 (degenerate coefficients),
        "unit" (a = b = 1).
        """
        bc = bc or BcSpec()
        key = str(example).strip().lower()
        if key == "1":
            return cls(Coefficient.nice_a(), Coefficient.nice_b(), bc, "1")
        if key == "2":
            return cls(Coefficient.degenerate_a(), Coefficient.degenerate_b(), bc, "2")
        if key == "unit":
            one = Coefficient.constant(1.0)
            return cls(one, one, bc, "unit")
        raise ValueError(f"unknown example '{example}', expected 1, 2 or unit")

    @classmethod
    def custom(cls, a: str, b: str, bc: Optional[BcSpec] = None) -> "ProblemSpec":
        """Problem from coefficient names such as "constant:2.5" or "degenerate_a"."""
        return cls(Coefficient.from_name(a), Coefficient.from_name(b), bc or BcSpec(), "custom")

    @property
    def same_coefficients(self) -> bool:
        return self.a == self.b


@dataclass(frozen=True, eq=False)
class DiscreteProblem:
    """
    Mass, stiffness and lumped mass matrices on the free dofs of one mesh.

    The block system is [[tau A, M], [M, -tau B]] (v; u) = (f; g).
    mesh, dofmap and spec are None for problems built directly from matrices.
    """
    M: sp.csr_matrix
    A: sp.csr_matrix
    B: sp.csr_matrix
    Mbar: DiagonalMatrix
    tau: float
    f: np.ndarray
    g: np.ndarray
    mesh: Optional[Mesh] = None
    dofmap: Optional[DofMap] = None
    spec: Optional[ProblemSpec] = None

    @classmethod
    def from_matrices(cls, M, A, B, tau: float, Mbar=None, f=None, g=None) -> "DiscreteProblem":
        """Build a problem from explicit matrices (dense or sparse)."""
        M = sp.csr_matrix(M, dtype=float)
        A = sp.csr_matrix(A, dtype=float)
        B = sp.csr_matrix(B, dtype=float)
        n = M.shape[0]
        if Mbar is None:
            Mbar = lump(M)
        elif not isinstance(Mbar, DiagonalMatrix):
            Mbar = DiagonalMatrix(np.asarray(Mbar, dtype=float).ravel())
        f = np.ones(n) if f is None else np.asarray(f, dtype=float)
        g = np.zeros(n) if g is None else np.asarray(g, dtype=float)
        return cls(M=M, A=A, B=B, Mbar=Mbar, tau=float(tau), f=f, g=g)

    @property
    def n(self) -> int:
        """Unknowns per field, N_h."""
        return self.M.shape[0]

    @property
    def h(self) -> Optional[float]:
        return self.mesh.h if self.mesh is not None else None

    @property
    def level(self) -> Optional[int]:
        return self.mesh.level if self.mesh is not None else None

    def with_tau(self, tau: float) -> "DiscreteProblem":
        """Same assembly, different tau."""
        return replace(self, tau=float(tau))

    def rhs(self) -> np.ndarray:
        """Block right-hand side (f; g)."""
        return np.concatenate([self.f, self.g])

    def delta_mass(self) -> sp.csr_matrix:
        """M - M̄."""
        return (self.M - self.Mbar.tocsr()).tocsr()


def assemble_problem(level: int, spec: ProblemSpec, tau: float, mesh: Optional[Mesh] = None) -> DiscreteProblem:
    """
    Assemble the problem on the level-`level` mesh.

    Args:
        level: Mesh refinement level
        spec: Coefficients and boundary condition
        tau: Square root of the time step
        mesh: Prebuilt mesh of that level, built here when omitted

    Returns:
        DiscreteProblem with f = 1 and g = 0
    """
    mesh = mesh if mesh is not None else build_lshape_mesh(level)
    dofs = classify_dofs(mesh, spec.bc)
    M = assemble_mass(mesh, dofs)
    A = assemble_stiffness(mesh, dofs, spec.a)
    B = A if spec.same_coefficients else assemble_stiffness(mesh, dofs, spec.b)
    Mbar = lump(M, mesh, dofs)
    logger.debug("assembled level %d (%s, %s): N_h=%d", mesh.level, spec.name, spec.bc.name, dofs.n_free)
    return DiscreteProblem(
        M=M, A=A, B=B, Mbar=Mbar, tau=float(tau),
        f=load_vector(mesh, dofs), g=np.zeros(dofs.n_free),
        mesh=mesh, dofmap=dofs, spec=spec,
    )
