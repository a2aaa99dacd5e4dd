"""
Shared fixtures: small meshes, assembled level-2/3 problems and a 1-DOF problem.
"""

import numpy as np
import pytest

from src.assembly import ProblemSpec, assemble_problem
from src.assembly.discrete_problem import DiscreteProblem
from src.mesh import build_lshape_mesh


def interior_count(level: int) -> int:
    """Free dofs of the L-shaped mesh under all-Dirichlet conditions."""
    n = 2 ** level
    return (2 * n - 1) ** 2 - n ** 2


@pytest.fixture(autouse=True)
def isolated_environment(tmp_path, monkeypatch):
    monkeypatch.setenv("LUMO_OUTPUT_DIR", str(tmp_path / "results"))
    monkeypatch.delenv("LUMO_SEED", raising=False)
    monkeypatch.delenv("LUMO_DENSE_CAP", raising=False)


@pytest.fixture(scope="session")
def mesh2():
    return build_lshape_mesh(2)


@pytest.fixture(scope="session")
def example1_l2():
    return assemble_problem(2, ProblemSpec.example(1), 1e-1)


@pytest.fixture(scope="session")
def example1_l3():
    return assemble_problem(3, ProblemSpec.example(1), 1e-2)


@pytest.fixture(scope="session")
def example2_l2():
    return assemble_problem(2, ProblemSpec.example(2), 1e-1)


@pytest.fixture(scope="session")
def unit_l2():
    return assemble_problem(2, ProblemSpec.example("unit"), 1e-1)


@pytest.fixture
def one_dof():
    """N_h = 1 with M = 1, M̄ = 2, A = 3, B = 5, tau = 1/2."""
    return DiscreteProblem.from_matrices(
        np.array([[1.0]]), np.array([[3.0]]), np.array([[5.0]]), tau=0.5, Mbar=np.array([2.0]),
    )
