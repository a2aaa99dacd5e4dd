import json

import numpy as np
import pytest
from numpy.testing import assert_allclose

from src.assembly import ProblemSpec
from src.block_system import BlockVariant, build_block
from src.multigrid import (
    CycleType,
    SolveReport,
    build_hierarchy,
    convergence_factor,
    mg_cycle,
    mg_solve,
    random_initial_guess,
)
from src.smoothers import SmootherConfig
from src.utils.errors import DimensionMismatchError, HierarchyError, SmootherError

from conftest import interior_count

EXAMPLE_1 = ProblemSpec.example(1)


def relative_error(report, op, rhs):
    exact = np.linalg.solve(op.to_dense(), rhs)
    return np.linalg.norm(report.solution - exact) / np.linalg.norm(exact)


def test_hierarchy_shapes():
    h = build_hierarchy(3, 1, EXAMPLE_1, 1e-2)
    assert h.n_levels == 3
    assert [level.problem.n for level in h.levels] == [interior_count(k) for k in (1, 2, 3)]
    assert h.levels[0].smoother is None and h.levels[0].prolongation is None
    for coarse, fine in zip(h.levels[:-1], h.levels[1:]):
        assert fine.prolongation.shape == (2 * fine.problem.n, 2 * coarse.problem.n)
        assert fine.restriction.shape == (2 * coarse.problem.n, 2 * fine.problem.n)
    assert h.target is BlockVariant.A and h.cycle is CycleType.V
    assert h.tau == 1e-2


def test_hierarchy_rejects_bad_setups():
    with pytest.raises(HierarchyError):
        build_hierarchy(2, 3, EXAMPLE_1, 1.0)
    with pytest.raises(HierarchyError):
        build_hierarchy(2, 0, EXAMPLE_1, 1.0)
    with pytest.raises(HierarchyError):
        build_hierarchy(2, 1, EXAMPLE_1, 1.0, target="Bd")
    with pytest.raises(HierarchyError):
        build_hierarchy(2, 1, EXAMPLE_1, 1.0, pre=-1)
    with pytest.raises(SmootherError):
        build_hierarchy(2, 1, EXAMPLE_1, 1.0, target="A", smoother=SmootherConfig.distributive())
    with pytest.raises(ValueError):
        CycleType.parse("f")


def test_single_level_hierarchy_is_direct_solve():
    h = build_hierarchy(2, 2, EXAMPLE_1, 1e-1)
    report = mg_solve(h, tol=1e-10)
    assert report.converged and report.iterations == 1


def test_mg_solve_converges_on_example_1():
    h = build_hierarchy(4, 1, EXAMPLE_1, 1e-2, smoother=SmootherConfig.collective_gs())
    report = mg_solve(h, tol=1e-7, maxit=50)
    assert report.converged
    assert report.iterations <= 20
    assert report.conv_factor < 0.5
    assert report.residuals[-1] < 1e-7 * report.residuals[0]


@pytest.mark.parametrize("target, smoother", [
    ("A", SmootherConfig.collective_gs()),
    ("B", SmootherConfig.collective_gs()),
    ("Btilde", SmootherConfig.distributive()),
    ("B", SmootherConfig.distributive()),
])
def test_mg_solve_matches_dense_solution(target, smoother):
    h = build_hierarchy(3, 1, EXAMPLE_1, 1e-1, target=target, smoother=smoother, cycle="w", pre=2, post=2)
    report = mg_solve(h, tol=1e-10, maxit=200)
    assert report.converged
    assert relative_error(report, h.finest.op, h.finest.problem.rhs()) < 1e-6


def test_v_cycle_contraction_on_level_3():
    report = mg_solve(build_hierarchy(3, 1, EXAMPLE_1, 1e-2, smoother=SmootherConfig.collective_gs()), tol=1e-7)
    assert report.converged
    assert report.conv_factor <= 0.2


def test_iteration_counts_are_robust_in_h():
    counts = [
        mg_solve(build_hierarchy(level, 1, EXAMPLE_1, 1e-2, smoother=SmootherConfig.collective_gs()),
                 tol=1e-7).iterations
        for level in (2, 3, 4)
    ]
    assert max(counts) - min(counts) <= 2


def test_collective_jacobi_multigrid_converges():
    h = build_hierarchy(3, 1, EXAMPLE_1, 1e-1, smoother=SmootherConfig.collective_jacobi(0.8), pre=2, post=2)
    assert mg_solve(h, tol=1e-7, maxit=100).converged


def test_w_cycle_needs_no_more_iterations_than_v():
    v = mg_solve(build_hierarchy(4, 1, EXAMPLE_1, 1e-3, cycle="v"), tol=1e-7)
    w = mg_solve(build_hierarchy(4, 1, EXAMPLE_1, 1e-3, cycle="w"), tol=1e-7)
    assert w.iterations <= v.iterations


def test_with_tau_matches_fresh_hierarchy():
    base = build_hierarchy(3, 1, EXAMPLE_1, 1.0, target="B")
    moved = base.with_tau(1e-3)
    fresh = build_hierarchy(3, 1, EXAMPLE_1, 1e-3, target="B")
    assert moved.tau == 1e-3 and base.tau == 1.0
    assert moved.finest.problem.M is base.finest.problem.M
    assert_allclose(moved.finest.op.to_dense(), fresh.finest.op.to_dense())
    assert mg_solve(moved, seed=4).iterations == mg_solve(fresh, seed=4).iterations


def test_solve_is_reproducible():
    h = build_hierarchy(3, 1, EXAMPLE_1, 1e-2)
    first, second = mg_solve(h, seed=7), mg_solve(h, seed=7)
    assert first.iterations == second.iterations
    assert_allclose(first.residuals, second.residuals)
    assert_allclose(random_initial_guess(5, 7), random_initial_guess(5, 7))
    assert np.all((random_initial_guess(50, 1) >= 0.0) & (random_initial_guess(50, 1) < 1.0))


def test_cycle_does_not_modify_inputs():
    h = build_hierarchy(2, 1, EXAMPLE_1, 1e-1)
    rhs = h.finest.problem.rhs()
    x = np.zeros_like(rhs)
    mg_cycle(h, rhs, x)
    assert not x.any()
    with pytest.raises(DimensionMismatchError):
        mg_cycle(h, rhs[:-1], x)


def test_zero_rhs_with_zero_guess():
    h = build_hierarchy(2, 1, EXAMPLE_1, 1e-1)
    report = mg_solve(h, rhs=np.zeros(2 * h.finest.problem.n), x0=np.zeros(2 * h.finest.problem.n))
    assert report.converged and report.iterations == 0
    assert report.relative_residual == 0.0


def test_mg_solve_rejects_nonpositive_tol():
    with pytest.raises(ValueError):
        mg_solve(build_hierarchy(2, 1, EXAMPLE_1, 1e-1), tol=0.0)


def test_nonconvergence_is_reported():
    h = build_hierarchy(3, 1, EXAMPLE_1, 1e-2)
    report = mg_solve(h, tol=1e-12, maxit=1)
    assert not report.converged
    assert report.iterations == 1


def test_convergence_factor():
    assert convergence_factor([1.0]) == 0.0
    assert convergence_factor([0.0, 0.0]) == 0.0
    assert_allclose(convergence_factor([1.0, 0.1, 0.01]), 0.1)


def test_report_serialization_drops_solution():
    report = SolveReport.from_history([4.0, 2.0, 1.0], True, 3.5, solution=np.ones(3))
    data = report.to_dict()
    assert set(data) == {"iterations", "converged", "residuals", "conv_factor", "wall_ms"}
    assert data["iterations"] == 2
    assert_allclose(data["conv_factor"], 0.5)
    assert json.loads(report.to_json())["residuals"] == [4.0, 2.0, 1.0]
    assert report.relative_residual == 0.25
