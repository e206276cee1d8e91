"""Symmetric decompositions of self-adjoint operators on C^d."""

from .bounds import BoundsReport, a_bounds, phi_closed_form, phi_oracle
from .construct import ConstructionBasis, PsdWindow, build_basis, build_family, psd_window, v_matrix
from .dual import dual_family, dual_of_decomposition, normalized_dual
from .family import SymmetricFamily, fit_parameters, verify_decomposition
from .hermitian import Spectrum, eig_sa, gram_schmidt_operators, hs_inner, is_psd
from .welch import holder_welch, min_angle_bound, simplex_bound, weighted_welch

__version__ = "0.1.0"

__all__ = [
    "BoundsReport",
    "ConstructionBasis",
    "PsdWindow",
    "Spectrum",
    "SymmetricFamily",
    "a_bounds",
    "build_basis",
    "build_family",
    "dual_family",
    "dual_of_decomposition",
    "eig_sa",
    "fit_parameters",
    "gram_schmidt_operators",
    "holder_welch",
    "hs_inner",
    "is_psd",
    "min_angle_bound",
    "normalized_dual",
    "phi_closed_form",
    "phi_oracle",
    "psd_window",
    "simplex_bound",
    "v_matrix",
    "verify_decomposition",
    "weighted_welch",
]
