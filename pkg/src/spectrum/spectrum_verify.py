"""
Spectrum Verification
Densifies preconditioned operators at verification scale and checks their
spectra against the known inclusions for the mass-lumping preconditioners,
the block-diagonal small-tau preconditioner, and the auxiliary operator X.
"""

import logging
from typing import Dict, Iterable, List, Optional, Union

import numpy as np
import scipy.linalg as la

from ..assembly.discrete_problem import DiscreteProblem
from ..block_system.block_operator import BlockVariant, build_block
from ..linalg.dense_eigen import check_dense_cap, dense_eigenvalues, sym_generalized_eig_extremes
from ..utils.errors import CoefficientMismatchError, EigenSolverError
from .spectrum_report import BoundCheck, SpectrumReport

logger = logging.getLogger(__name__)

# Slack on interval endpoints for eigensolver round-off.
ENDPOINT_TOL = 1e-9


def same_stiffness(problem: DiscreteProblem) -> bool:
    """A and B are the same matrix."""
    if problem.A is problem.B:
        return True
    return problem.A.shape == problem.B.shape and (problem.A != problem.B).nnz == 0


def estimate_C1(M, Mbar) -> float:
    """Smallest eigenvalue of the pencil (M, M̄): the sharp C1 of C1 (M̄u,u) <= (Mu,u) <= (M̄u,u)."""
    return sym_generalized_eig_extremes(M, Mbar)[0]


def densify_preconditioned(problem: DiscreteProblem, precond: Union[str, BlockVariant]) -> np.ndarray:
    """Dense P^-1 𝓐 from LU solves against the columns of 𝓐."""
    variant = BlockVariant.parse(precond)
    check_dense_cap(2 * problem.n)
    system = build_block(problem, BlockVariant.A).to_dense()
    if variant is BlockVariant.A:
        return np.eye(2 * problem.n)
    factors = la.lu_factor(build_block(problem, variant).to_dense())
    return la.lu_solve(factors, system)


def preconditioned_spectrum(problem: DiscreteProblem, precond: Union[str, BlockVariant]) -> SpectrumReport:
    """
    All eigenvalues of P^-1 𝓐 with the checks that apply to P.

    B: spectral radius below 2. Btilde with A = B: real spectrum in (C1, 1]
    and eigenvalue 1 at least N_h times. A: every eigenvalue equals 1.
    """
    variant = BlockVariant.parse(precond)
    eigenvalues = dense_eigenvalues(densify_preconditioned(problem, variant))
    C1 = estimate_C1(problem.M, problem.Mbar)
    report = SpectrumReport.from_eigenvalues(
        eigenvalues, C1=C1, label=variant.value, h=problem.h, tau=problem.tau,
    )
    checks = report.bound_checks
    if variant is BlockVariant.A:
        checks.append(BoundCheck.at_most("eigenvalues equal 1", float(np.abs(eigenvalues - 1.0).max()), 1e-10))
    elif variant is BlockVariant.B:
        checks.append(BoundCheck.below("spectral radius below 2", report.rho, 2.0))
    elif variant is BlockVariant.BTILDE and same_stiffness(problem):
        checks.append(BoundCheck.at_most("eigenvalues real", float(np.abs(eigenvalues.imag).max()), 1e-8))
        checks.append(BoundCheck.below("eigenvalues above C1", C1 - ENDPOINT_TOL, float(eigenvalues.real.min())))
        checks.append(BoundCheck.at_most("eigenvalues at most 1", float(eigenvalues.real.max()), 1.0 + ENDPOINT_TOL))
        unit = int(np.sum(np.abs(eigenvalues - 1.0) < 1e-6))
        checks.append(BoundCheck.at_least("eigenvalue 1 multiplicity >= N_h", unit, problem.n))
    elif variant is BlockVariant.BD:
        checks.append(BoundCheck.below("spectral radius of deviation below 1",
                                       float(np.abs(eigenvalues - 1.0).max()), 1.0))
    logger.info("spectrum of %s^-1 A (N_h=%d, tau=%g): rho=%.4f", variant.value, problem.n, problem.tau, report.rho)
    return report


def spectrum_of_X(problem: DiscreteProblem) -> SpectrumReport:
    """
    Spectrum of X = (I + tau^2 M̄^-1 B M^-1 A)^-1 (M̄^-1 M - I) for A = B.

    Computed from the symmetric pencil (M - M̄, M̄ + tau^2 A M^-1 A), so the
    eigenvalues are real; checks containment in (C1 - 1, 0].

    Raises:
        CoefficientMismatchError: if A and B differ
    """
    if not same_stiffness(problem):
        raise CoefficientMismatchError("spectrum_of_X needs identical a and b coefficients")
    check_dense_cap(problem.n)
    M = problem.M.toarray()
    A = problem.A.toarray()
    lumped = np.diag(problem.Mbar.diag)
    left = M - lumped
    right = lumped + problem.tau ** 2 * A @ la.solve(M, A, assume_a="pos")
    right = 0.5 * (right + right.T)
    try:
        eigenvalues = la.eigh(left, right, eigvals_only=True)
    except la.LinAlgError as exc:
        raise EigenSolverError(f"generalized eigenproblem for X failed: {exc}") from exc
    C1 = estimate_C1(problem.M, problem.Mbar)
    report = SpectrumReport.from_eigenvalues(eigenvalues, C1=C1, label="X", h=problem.h, tau=problem.tau)
    report.bound_checks += [
        BoundCheck.below("sigma(X) above C1 - 1", C1 - 1.0 - ENDPOINT_TOL, float(eigenvalues.min())),
        BoundCheck.at_most("sigma(X) at most 0", float(eigenvalues.max()), ENDPOINT_TOL),
    ]
    return report


def bd_deviation(problem: DiscreteProblem, tau: Optional[float] = None) -> np.ndarray:
    """Dense E_d = diag(M, M)^-1 [[0, tau A], [-tau B, 0]] in (u, v) ordering."""
    tau = problem.tau if tau is None else tau
    check_dense_cap(2 * problem.n)
    factors = la.cho_factor(problem.M.toarray())
    top = tau * la.cho_solve(factors, problem.A.toarray())
    bottom = -tau * la.cho_solve(factors, problem.B.toarray())
    zeros = np.zeros((problem.n, problem.n))
    return np.block([[zeros, top], [bottom, zeros]])


def verify_bd_bound(problem: DiscreteProblem, tau: Optional[float] = None) -> SpectrumReport:
    """
    Spectral radius of E_d, where 𝓑_d^-1 𝓐 = I + E_d in (u, v) ordering.

    The eigenvalues of 𝓑_d^-1 𝓐 are 1 + eig(E_d), so they lie in the disk of
    radius rho(E_d) around 1; the preconditioner is useful when rho(E_d) < 1.
    The preconditioned eigenvalues are computed separately from the (v, u)
    block operators, and the disk radius must be attained by them.
    """
    tau = problem.tau if tau is None else tau
    deviation = dense_eigenvalues(bd_deviation(problem, tau))
    report = SpectrumReport.from_eigenvalues(deviation, label="E_d", h=problem.h, tau=tau)
    preconditioned = dense_eigenvalues(densify_preconditioned(problem.with_tau(tau), BlockVariant.BD))
    distance = float(np.abs(preconditioned - 1.0).max(initial=0.0))
    slack = ENDPOINT_TOL + 1e-6 * report.rho
    report.bound_checks += [
        BoundCheck.below("rho(E_d) below 1", report.rho, 1.0),
        BoundCheck.at_most("preconditioned eigenvalues in disk B(1, rho)", distance, report.rho + slack),
        BoundCheck.at_most("disk radius attained by preconditioned eigenvalues",
                           abs(distance - report.rho), slack),
    ]
    return report


def scan_spectral_radius(problem: DiscreteProblem, taus: Iterable[float],
                         precond: Union[str, BlockVariant] = BlockVariant.B) -> Dict[str, object]:
    """
    rho(P^-1 𝓐) over a tau grid.

    Returns:
        {"taus": [...], "rho": [...], "threshold": largest tau with rho >= 2 or None}
    """
    taus = sorted(float(t) for t in taus)
    rhos: List[float] = []
    for tau in taus:
        matrix = densify_preconditioned(problem.with_tau(tau), precond)
        rhos.append(float(np.abs(dense_eigenvalues(matrix)).max()))
    failing = [tau for tau, rho in zip(taus, rhos) if rho >= 2.0]
    threshold = max(failing) if failing else None
    logger.info("rho scan over %d tau values: threshold %s", len(taus), threshold)
    return {"taus": taus, "rho": rhos, "threshold": threshold}


def eigenpair_identity_residuals(problem: DiscreteProblem) -> np.ndarray:
    """
    For every eigenpair (lambda, (v, u)) of 𝓑^-1 𝓐, the relative mismatch of

        |lambda - 1|^2 = 4 Im((dM v, u))^2 / (alpha^2 + 4 Im((M̄ v, u))^2),
        alpha = tau ((A v, v) + (B u, u)),  dM = M - M̄,

    with (x, y) = y^H x.
    """
    check_dense_cap(2 * problem.n)
    lumped = build_block(problem, BlockVariant.B).to_dense()
    system = build_block(problem, BlockVariant.A).to_dense()
    try:
        eigenvalues, vectors = la.eig(system, lumped)
    except la.LinAlgError as exc:
        raise EigenSolverError(f"generalized eigenproblem failed: {exc}") from exc
    n = problem.n
    A = problem.A.toarray()
    B = problem.B.toarray()
    delta = problem.delta_mass().toarray()
    lumped_mass = np.diag(problem.Mbar.diag)
    residuals = np.empty(len(eigenvalues))
    for index, (lam, w) in enumerate(zip(eigenvalues, vectors.T)):
        v, u = w[:n], w[n:]
        alpha = problem.tau * (np.real(np.vdot(v, A @ v)) + np.real(np.vdot(u, B @ u)))
        im_delta = np.imag(np.vdot(u, delta @ v))
        im_lumped = np.imag(np.vdot(u, lumped_mass @ v))
        lhs = abs(lam - 1.0) ** 2
        rhs = 4.0 * im_delta ** 2 / (alpha ** 2 + 4.0 * im_lumped ** 2)
        residuals[index] = abs(lhs - rhs) / (max(lhs, rhs) + 1e-8)
    return residuals
