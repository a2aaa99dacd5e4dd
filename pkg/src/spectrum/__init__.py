"""
Spectrum Package
Dense spectral verification of the preconditioned systems and of the
mass-lumping estimates they rest on.
"""

from .spectrum_report import BoundCheck, SpectrumReport
from .spectrum_verify import (
    bd_deviation,
    densify_preconditioned,
    eigenpair_identity_residuals,
    estimate_C1,
    preconditioned_spectrum,
    same_stiffness,
    scan_spectral_radius,
    spectrum_of_X,
    verify_bd_bound,
)
from .smw import smw_sides, verify_smw_identity
from .lemma_checks import (
    c1_stability,
    delta_mass_nsd,
    eigenvalue_scaling,
    lumping_error_constant,
    lumping_error_scaling,
    norm_equivalence,
)

__all__ = [
    "BoundCheck",
    "SpectrumReport",
    "bd_deviation",
    "densify_preconditioned",
    "eigenpair_identity_residuals",
    "estimate_C1",
    "preconditioned_spectrum",
    "same_stiffness",
    "scan_spectral_radius",
    "spectrum_of_X",
    "verify_bd_bound",
    "smw_sides",
    "verify_smw_identity",
    "c1_stability",
    "delta_mass_nsd",
    "eigenvalue_scaling",
    "lumping_error_constant",
    "lumping_error_scaling",
    "norm_equivalence",
]
