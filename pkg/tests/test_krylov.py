import numpy as np
import pytest
import scipy.sparse as sp
from numpy.testing import assert_allclose

from src.assembly import ProblemSpec, assemble_problem
from src.block_system import BlockVariant, build_block
from src.krylov import (
    InnerKind,
    InnerSolver,
    Preconditioner,
    build_preconditioner,
    fgmres,
    gs_block_diagonal_preconditioner,
    lu_preconditioner,
)
from src.multigrid import build_hierarchy
from src.smoothers import SmootherConfig
from src.utils.errors import ConfigurationError, DimensionMismatchError


def test_identity_converges_in_one_step():
    rhs = np.arange(1.0, 6.0)
    x, report = fgmres(lambda v: v, None, rhs)
    assert report.converged and report.iterations == 1
    assert_allclose(x, rhs)


def test_exact_preconditioner_converges_in_one_step(example1_l2):
    op = build_block(example1_l2, "A")
    x, report = fgmres(op.apply, lu_preconditioner(op), example1_l2.rhs(), tol=1e-10)
    assert report.iterations == 1 and report.converged
    assert_allclose(op.apply(x), example1_l2.rhs(), atol=1e-10)


def test_happy_breakdown_on_small_spectrum():
    # two distinct eigenvalues, so the Krylov space is exhausted after two steps
    matrix = sp.diags([2.0, 2.0, 5.0, 5.0]).tocsr()
    rhs = np.ones(4)
    x, report = fgmres(lambda v: matrix @ v, None, rhs, tol=1e-14)
    assert report.converged and report.breakdown
    assert report.iterations == 2
    assert all(r > 0.0 for r in report.residuals)
    assert report.relative_residual < 1e-12
    assert_allclose(x, [0.5, 0.5, 0.2, 0.2])
    assert "breakdown" not in report.to_dict()


def test_identity_breakdown_keeps_positive_history():
    _, report = fgmres(lambda v: v, None, np.arange(1.0, 5.0))
    assert report.breakdown and report.iterations == 1
    assert 0.0 < report.residuals[-1] < 1e-7 * report.residuals[0]


def test_zero_rhs_returns_initial_guess():
    x, report = fgmres(lambda v: 3.0 * v, None, np.zeros(3))
    assert report.converged and report.iterations == 0
    assert not x.any()


def test_iteration_cap_and_x0_validation():
    rng = np.random.default_rng(0)
    matrix = rng.standard_normal((30, 30)) + 30.0 * np.eye(30)
    _, report = fgmres(lambda v: matrix @ v, None, rng.standard_normal(30), tol=1e-15, maxit=2)
    assert not report.converged and report.iterations == 2
    with pytest.raises(DimensionMismatchError):
        fgmres(lambda v: v, None, np.ones(3), x0=np.ones(2))


def test_flexible_preconditioner_changing_per_step():
    rng = np.random.default_rng(1)
    matrix = np.diag(np.linspace(1.0, 100.0, 40)) + 0.1 * rng.standard_normal((40, 40))
    inverse = np.linalg.inv(matrix)
    calls = []

    def varying(r):
        calls.append(len(calls))
        scale = 1.0 + 0.2 * (-1) ** len(calls)
        return scale * (inverse @ r) + 1e-3 * r

    rhs = rng.standard_normal(40)
    x, report = fgmres(lambda v: matrix @ v, varying, rhs, tol=1e-10)
    assert report.converged
    assert_allclose(matrix @ x, rhs, atol=1e-8)
    assert len(calls) == report.iterations


def test_inner_solver_parsing():
    assert InnerSolver.parse("gs(3)").steps == 3
    assert InnerSolver.parse("GS").steps == 1
    assert InnerSolver.parse("lu").kind is InnerKind.LU
    mg = InnerSolver.parse("mg", pre=2, post=2)
    assert mg.kind is InnerKind.MG and mg.label == "V(2,2) CGS-MG"
    with pytest.raises(ConfigurationError):
        InnerSolver.parse("ilu")


def test_block_diagonal_rejects_multigrid():
    with pytest.raises(ConfigurationError) as info:
        Preconditioner(BlockVariant.BD, InnerSolver(InnerKind.MG))
    assert "inner" in info.value.fields
    assert Preconditioner("bd", InnerSolver.parse("gs(3)")).label == "GS(3) on Bd"


def test_preconditioner_requires_matching_hierarchy(example1_l2):
    with pytest.raises(ConfigurationError):
        build_preconditioner(Preconditioner("B"), example1_l2)
    with pytest.raises(ConfigurationError):
        build_preconditioner(Preconditioner("A", InnerSolver.parse("gs(2)")), example1_l2)
    hierarchy = build_hierarchy(2, 1, ProblemSpec.example(1), example1_l2.tau, target="A")
    with pytest.raises(ConfigurationError):
        build_preconditioner(Preconditioner("B"), example1_l2, hierarchy)


def test_block_diagonal_gs_approaches_exact_inverse(example1_l2):
    op = build_block(example1_l2, "Bd")
    r = np.random.default_rng(2).standard_normal(2 * op.n)
    exact = lu_preconditioner(op)(r)
    coarse = np.linalg.norm(gs_block_diagonal_preconditioner(example1_l2, 1)(r) - exact)
    fine = np.linalg.norm(gs_block_diagonal_preconditioner(example1_l2, 30)(r) - exact)
    assert fine < coarse
    assert fine < 1e-6 * np.linalg.norm(exact)


@pytest.mark.parametrize("target, smoother", [
    ("B", SmootherConfig.collective_gs()),
    ("Btilde", SmootherConfig.distributive()),
    ("A", SmootherConfig.collective_gs()),
])
def test_multigrid_preconditioned_gmres(target, smoother):
    spec = ProblemSpec.example(1)
    hierarchy = build_hierarchy(3, 1, spec, 1e-2, target=target, smoother=smoother)
    problem = assemble_problem(3, spec, 1e-2)
    op = build_block(problem, "A")
    apply_P = build_preconditioner(Preconditioner(target, InnerSolver(smoother=smoother)), problem, hierarchy)
    x0 = np.random.default_rng(0).random(op.shape[0])
    x, report = fgmres(op.apply, apply_P, problem.rhs(), x0=x0, tol=1e-10)
    assert report.converged and report.iterations <= 30
    exact = np.linalg.solve(op.to_dense(), problem.rhs())
    assert np.linalg.norm(x - exact) < 1e-6 * np.linalg.norm(exact)


def test_block_diagonal_gs_for_tiny_tau():
    problem = assemble_problem(2, ProblemSpec.example(1), 1e-6)
    op = build_block(problem, "A")
    apply_P = build_preconditioner(Preconditioner("Bd", InnerSolver.parse("gs(3)")), problem)
    _, report = fgmres(op.apply, apply_P, problem.rhs(), tol=1e-7)
    assert report.converged and report.iterations <= 20


def test_residuals_never_increase(example1_l2):
    op = build_block(example1_l2, "A")
    _, plain = fgmres(op.apply, None, example1_l2.rhs(), tol=1e-10)
    hierarchy = build_hierarchy(3, 1, ProblemSpec.example(1), 1e-2, target="B")
    problem = hierarchy.finest.problem
    apply_P = build_preconditioner(Preconditioner("B"), problem, hierarchy)
    _, preconditioned = fgmres(build_block(problem, "A").apply, apply_P, problem.rhs(), tol=1e-10)
    for report in (plain, preconditioned):
        steps = np.diff(report.residuals)
        assert np.all(steps <= 1e-12 * report.residuals[0])


def test_unpreconditioned_solution_matches_dense_solve(example1_l2):
    op = build_block(example1_l2, "A")
    rhs = example1_l2.rhs()
    x, _ = fgmres(op.apply, None, rhs, tol=1e-14, maxit=op.shape[0])
    exact = np.linalg.solve(op.to_dense(), rhs)
    assert np.linalg.norm(x - exact) < 1e-8 * np.linalg.norm(exact)


@pytest.mark.parametrize("precond", ["B", "Btilde"])
def test_exact_lumped_preconditioner_is_level_independent(precond):
    counts = []
    for level in (2, 3, 4):
        problem = assemble_problem(level, ProblemSpec.example("unit"), 1e-1)
        apply_P = build_preconditioner(Preconditioner(precond, InnerSolver.parse("lu")), problem)
        _, report = fgmres(build_block(problem, "A").apply, apply_P, problem.rhs(), tol=1e-7)
        assert report.converged
        counts.append(report.iterations)
    assert max(counts) - min(counts) <= 2
