import json

import numpy as np
import pytest
from numpy.testing import assert_allclose

from src.spectrum import (
    BoundCheck,
    SpectrumReport,
    bd_deviation,
    c1_stability,
    delta_mass_nsd,
    densify_preconditioned,
    eigenpair_identity_residuals,
    eigenvalue_scaling,
    estimate_C1,
    lumping_error_scaling,
    norm_equivalence,
    preconditioned_spectrum,
    same_stiffness,
    scan_spectral_radius,
    smw_sides,
    spectrum_of_X,
    verify_bd_bound,
    verify_smw_identity,
)
from src.spectrum import spectrum_verify
from src.utils.errors import CoefficientMismatchError, DenseCapExceededError


def test_exact_preconditioner_gives_identity(example1_l2):
    report = preconditioned_spectrum(example1_l2, "A")
    assert report.passed
    assert_allclose(densify_preconditioned(example1_l2, "A"), np.eye(2 * example1_l2.n))


@pytest.mark.parametrize("fixture", ["example1_l2", "example2_l2", "unit_l2"])
def test_lumped_preconditioner_radius_below_two(request, fixture):
    problem = request.getfixturevalue(fixture)
    report = preconditioned_spectrum(problem, "B")
    assert report.passed
    assert report.rho < 2.0
    assert len(report.eigenvalues) == 2 * problem.n
    assert report.label == "B" and report.h == 0.25 and report.tau == 1e-1


def test_partially_lumped_spectrum_for_equal_coefficients(unit_l2):
    report = preconditioned_spectrum(unit_l2, "Btilde")
    assert same_stiffness(unit_l2)
    assert report.passed
    assert [check.name for check in report.bound_checks] == [
        "eigenvalues real", "eigenvalues above C1", "eigenvalues at most 1", "eigenvalue 1 multiplicity >= N_h",
    ]
    assert 0.0 < report.C1 < 1.0


def test_partially_lumped_without_equal_coefficients_has_no_checks(example1_l2):
    assert not same_stiffness(example1_l2)
    assert preconditioned_spectrum(example1_l2, "Btilde").bound_checks == []


def test_spectrum_of_X(unit_l2):
    report = spectrum_of_X(unit_l2)
    assert report.passed
    assert np.all(report.eigenvalues.imag == 0.0)
    assert report.eigenvalues.real.max() <= 1e-9
    with pytest.raises(CoefficientMismatchError):
        spectrum_of_X(unit_l2.__class__.from_matrices(unit_l2.M, unit_l2.A, 2.0 * unit_l2.A, tau=1.0))


def test_block_diagonal_bound_for_tiny_tau(example1_l2):
    report = verify_bd_bound(example1_l2, tau=1e-6)
    assert report.passed and report.tau == 1e-6
    smaller = verify_bd_bound(example1_l2, tau=1e-7)
    assert_allclose(report.rho / smaller.rho, 10.0, rtol=1e-2)
    deviation = bd_deviation(example1_l2, 1e-6)
    n = example1_l2.n
    assert not deviation[:n, :n].any() and not deviation[n:, n:].any()


def test_block_diagonal_spectrum(example1_l2):
    assert preconditioned_spectrum(example1_l2.with_tau(1e-6), "Bd").passed


def test_block_diagonal_disk_matches_preconditioned_eigenvalues(example1_l2):
    tau = 1e-6
    rho = verify_bd_bound(example1_l2, tau=tau).rho
    preconditioned = np.linalg.eigvals(densify_preconditioned(example1_l2.with_tau(tau), "Bd"))
    assert_allclose(np.abs(preconditioned - 1.0).max(), rho, rtol=1e-6)


def test_block_diagonal_bound_fails_for_wrong_deviation(example1_l2, monkeypatch):
    correct = spectrum_verify.bd_deviation
    monkeypatch.setattr(spectrum_verify, "bd_deviation", lambda problem, tau=None: 2.0 * correct(problem, tau))
    report = spectrum_verify.verify_bd_bound(example1_l2, tau=1e-6)
    assert not report.passed
    failed = [check.name for check in report.bound_checks if not check.satisfied]
    assert "disk radius attained by preconditioned eigenvalues" in failed


def test_spectral_radius_scan(unit_l2):
    scan = scan_spectral_radius(unit_l2, [1.0, 1e-4, 1e-1, 1e-3])
    assert scan["taus"] == [1e-4, 1e-3, 1e-1, 1.0]
    assert len(scan["rho"]) == 4
    h2 = unit_l2.h ** 2
    for tau, rho in zip(scan["taus"], scan["rho"]):
        if tau >= h2:
            assert rho < 2.0
    if scan["threshold"] is not None:
        assert scan["threshold"] < h2


def test_eigenpair_identity(example1_l2):
    residuals = eigenpair_identity_residuals(example1_l2)
    assert len(residuals) == 2 * example1_l2.n
    assert residuals.max() <= 1e-6


def test_smw_identity():
    assert verify_smw_identity(n=8, k=2, trials=10).satisfied
    rng = np.random.default_rng(4)
    A = 6.0 * np.eye(6) + rng.standard_normal((6, 6))
    U, V = rng.standard_normal((6, 2)), rng.standard_normal((6, 2))
    left, right = smw_sides(A, U, V)
    assert_allclose(left, right, atol=1e-10)


def test_lumping_estimates(example1_l2, example1_l3):
    for problem in (example1_l2, example1_l3):
        assert delta_mass_nsd(problem).satisfied
        assert all(check.satisfied for check in norm_equivalence(problem))
    assert_allclose(estimate_C1(example1_l2.M, example1_l2.Mbar), estimate_C1(example1_l3.M, example1_l3.Mbar),
                    rtol=0.2)


def test_scaling_checks():
    lumping = lumping_error_scaling(levels=(2, 3, 4))
    assert len(lumping["constants"]) == 3
    assert all(check.satisfied for check in lumping["checks"])
    scaling = eigenvalue_scaling(levels=(2, 3, 4))
    assert all(check.satisfied for check in scaling["checks"])
    stability = c1_stability(levels=(2, 3))
    assert all(check.satisfied for check in stability["checks"])


def test_report_serialization(unit_l2):
    report = preconditioned_spectrum(unit_l2, "B")
    data = json.loads(report.to_json())
    assert len(data["eigenvalues"]) == 2 * unit_l2.n
    assert data["bound_checks"][0]["name"] == "spectral radius below 2"
    restored = SpectrumReport.from_json(report.to_json())
    assert_allclose(restored.eigenvalues, report.eigenvalues)
    frame = report.scatter_frame()
    assert list(frame.columns) == ["re", "im", "h", "tau", "precond"]
    assert len(frame) == 2 * unit_l2.n


def test_bound_check_margins():
    assert BoundCheck.at_most("x", 1.0, 2.0).margin == 1.0
    assert not BoundCheck.below("x", 2.0, 2.0).satisfied
    assert BoundCheck.at_least("x", 3, 3).satisfied


def test_dense_cap_is_enforced(example1_l3, monkeypatch):
    monkeypatch.setenv("LUMO_DENSE_CAP", "100")
    with pytest.raises(DenseCapExceededError):
        preconditioned_spectrum(example1_l3, "B")
