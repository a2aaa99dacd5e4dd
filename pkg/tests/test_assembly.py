import numpy as np
import pytest
import scipy.linalg as la
import scipy.sparse as sp
from numpy.testing import assert_allclose

from src.assembly import (
    Coefficient,
    DiscreteProblem,
    ProblemSpec,
    assemble_mass,
    assemble_problem,
    assemble_stiffness,
    load_vector,
    lump,
)
from src.mesh import BcSpec, DofMap, classify_dofs
from src.utils.errors import AssemblyError


def all_vertices(mesh) -> DofMap:
    return DofMap(free=np.arange(mesh.n_vertices), fixed=np.array([], dtype=np.int64), n_vertices=mesh.n_vertices)


def test_mass_integrates_area(mesh2):
    M = assemble_mass(mesh2, all_vertices(mesh2))
    assert_allclose(M.sum(), 3.0)
    assert_allclose(lump(M, mesh2, all_vertices(mesh2)).diag.sum(), 3.0)


def test_stiffness_annihilates_constants(mesh2):
    K = assemble_stiffness(mesh2, all_vertices(mesh2), Coefficient.constant(1.0))
    assert_allclose(K @ np.ones(mesh2.n_vertices), 0.0, atol=1e-12)


def test_stiffness_energy_of_linear_function(mesh2):
    # |grad (x + 2y)|^2 integrated over the L is 5 * 3
    K = assemble_stiffness(mesh2, all_vertices(mesh2), Coefficient.constant(1.0))
    u = mesh2.vertices[:, 0] + 2.0 * mesh2.vertices[:, 1]
    assert_allclose(u @ (K @ u), 15.0)


def test_free_dof_matrices_are_spd(mesh2):
    dofs = classify_dofs(mesh2, BcSpec())
    for matrix in (assemble_mass(mesh2, dofs), assemble_stiffness(mesh2, dofs, Coefficient.nice_b())):
        dense = matrix.toarray()
        assert_allclose(dense, dense.T)
        assert la.eigvalsh(dense)[0] > 0.0


def test_stiffness_scales_with_constant(mesh2):
    dofs = classify_dofs(mesh2, BcSpec())
    base = assemble_stiffness(mesh2, dofs, Coefficient.constant(1.0))
    scaled = assemble_stiffness(mesh2, dofs, Coefficient.from_name("constant:2.5"))
    assert_allclose(scaled.toarray(), 2.5 * base.toarray())


def test_nonpositive_coefficient_raises(mesh2):
    dofs = classify_dofs(mesh2, BcSpec())
    with pytest.raises(AssemblyError) as info:
        assemble_stiffness(mesh2, dofs, Coefficient.custom(lambda x, y: x, label="x"))
    assert isinstance(info.value.triangle_id, int)
    assert info.value.value <= 0.0


def test_lumped_mass_is_full_row_sum(mesh2):
    dofs = classify_dofs(mesh2, BcSpec())
    full = assemble_mass(mesh2, all_vertices(mesh2))
    lumped = lump(assemble_mass(mesh2, dofs), mesh2, dofs)
    assert_allclose(lumped.diag, np.asarray(full.sum(axis=1)).ravel()[dofs.free])


def test_lump_without_mesh_uses_row_sums():
    M = np.array([[2.0, 1.0], [1.0, 2.0]]) / 6.0
    assert_allclose(lump(sp.csr_matrix(M)).diag, [0.5, 0.5])


def test_lumping_error_is_negative_semidefinite(example1_l2):
    values = la.eigvalsh(example1_l2.delta_mass().toarray())
    assert values.max() <= 1e-12


def test_load_vector_matches_lumped_mass(example1_l2):
    assert_allclose(example1_l2.f, example1_l2.Mbar.diag)
    assert_allclose(example1_l2.g, 0.0)
    mesh = example1_l2.mesh
    doubled = load_vector(mesh, example1_l2.dofmap, source=lambda x, y: 2.0 + 0.0 * x)
    assert_allclose(doubled, 2.0 * example1_l2.f)


def test_coefficient_fields():
    assert_allclose(Coefficient.nice_a()(0.3, -0.7), 1.0)
    assert_allclose(Coefficient.nice_b()(np.array([0.5, -0.5]), np.array([-0.5, 0.5])), [0.6, 1.2])
    assert_allclose(Coefficient.degenerate_a()(-1.0, 0.5), 0.6)
    assert_allclose(Coefficient.degenerate_b()(0.0, 0.3), 10.0)
    assert_allclose(Coefficient.degenerate_b()(0.1, 1.0 / 16.0), 13.0)


def test_coefficient_names():
    assert Coefficient.from_name("one").value == 1.0
    assert Coefficient.from_name("constant:2.5").name == "constant:2.5"
    assert Coefficient.from_name("Degenerate_A").name == "degenerate_a"
    with pytest.raises(ValueError):
        Coefficient.from_name("wavy")


def test_problem_specs():
    assert ProblemSpec.example("unit").same_coefficients
    assert not ProblemSpec.example(1).same_coefficients
    assert ProblemSpec.example(2, BcSpec.from_name("mixed_corner")).bc.name == "mixed_corner"
    assert ProblemSpec.custom("constant:2", "nice_b").name == "custom"
    with pytest.raises(ValueError):
        ProblemSpec.example(3)


def test_assemble_problem_shares_stiffness_for_equal_coefficients():
    problem = assemble_problem(2, ProblemSpec.example("unit"), 0.5)
    assert problem.B is problem.A
    assert problem.n == 33
    assert problem.h == 0.25
    assert problem.level == 2


def test_with_tau_reuses_assembly(example1_l2):
    other = example1_l2.with_tau(1e-3)
    assert other.tau == 1e-3
    assert other.M is example1_l2.M
    assert example1_l2.tau == 1e-1


def test_problem_from_matrices(one_dof):
    assert one_dof.n == 1
    assert one_dof.mesh is None and one_dof.h is None
    assert_allclose(one_dof.rhs(), [1.0, 0.0])
    assert_allclose(one_dof.delta_mass().toarray(), [[-1.0]])
    defaulted = DiscreteProblem.from_matrices(np.eye(2), np.eye(2), np.eye(2), tau=1.0)
    assert_allclose(defaulted.Mbar.diag, [1.0, 1.0])
