"""Dual and normalized-dual families of non-degenerate symmetric families.

For Gram matrix ``G = (a - b) I + b J`` the dual ``E~_i = sum_j (G^-1)_ij E_j``
is biorthogonal to ``E``. Rescaling by ``t2/N`` turns the dual of a
decomposition of ``T`` into another decomposition of ``T``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .family import DEFAULT_TOL, FamilyLike, SymmetricFamily, as_family, fit_parameters
from .hermitian import hs_inner, hs_norm

DEGENERACY_RTOL = 1e-10


class DegenerateFamilyError(ValueError):
    pass


@dataclass(frozen=True)
class DualParameters:
    a_tilde: float
    b_tilde: float
    a_hat: float | None = None
    b_hat: float | None = None
    x_hat: float | None = None


def dual_parameters(a: float, b: float, N: int, t2: float | None = None, x: float | None = None) -> DualParameters:
    """Parameters of the dual family; the hatted ones need ``t2``, ``x_hat`` needs ``x``."""
    denom = (a - b) * (a + b * (N - 1))
    if denom == 0:
        raise DegenerateFamilyError("Gram matrix is singular")
    a_t = (a + b * (N - 2)) / denom
    b_t = -b / denom
    if t2 is None:
        return DualParameters(a_t, b_t)
    k = (t2 / N) ** 2
    x_h = None if x is None else x_hat(x, t2, N)
    return DualParameters(a_t, b_t, k * a_t, k * b_t, x_h)


def x_hat(x: float, t2: float, N: int) -> float:
    """Construction parameter of the normalized dual: ``(N-1) t2 / (N^2 x)``."""
    if x <= 0:
        raise DegenerateFamilyError("x must be positive")
    return (N - 1) * t2 / (N * N * x)


def self_dual_x(t2: float, N: int) -> float:
    return float(np.sqrt((N - 1) * t2)) / N


def _require_symmetric(fam: SymmetricFamily, tol: float) -> None:
    scale = 1.0 + max(abs(fam.a_fit), abs(fam.b_fit))
    if fam.max_dev > tol * scale:
        raise ValueError(f"family is not symmetric (max deviation {fam.max_dev:.3e})")


def dual_family(family: FamilyLike, tol: float = DEFAULT_TOL) -> SymmetricFamily:
    """``E~_i = (E_i - b/(a + b(N-1)) sum_j E_j) / (a - b)`` from the fitted ``(a, b)``."""
    fam = as_family(family)
    _require_symmetric(fam, tol)
    a, b, n = fam.a_fit, fam.b_fit, fam.N
    scale = max(abs(a), abs(b), 1e-300)
    if a - b <= tol * scale or a + b * (n - 1) <= tol * scale:
        raise DegenerateFamilyError("family is degenerate (singular Gram matrix)")
    total = fam.total()
    c = b / (a + b * (n - 1))
    return fit_parameters([(m - c * total) / (a - b) for m in fam.members])


def dual_of_decomposition(family: FamilyLike, T: np.ndarray, tol: float = DEFAULT_TOL) -> SymmetricFamily:
    """``E~_i = N(N-1)/(a N^2 - t2) * (E_i - (t2 - a N)/((N-1) t2) T)``."""
    fam = as_family(family)
    _require_symmetric(fam, tol)
    T = np.asarray(T, dtype=complex)
    n, a = fam.N, fam.a_fit
    t2 = hs_inner(T, T)
    if n < 2:
        raise DegenerateFamilyError("need at least two members")
    if abs(a * n * n - t2) <= DEGENERACY_RTOL * t2:
        raise DegenerateFamilyError("degenerate decomposition: a N^2 = t2")
    resid = hs_norm(fam.total() - T)
    if resid > tol * (1.0 + hs_norm(T)):
        raise ValueError(f"family does not sum to T (residual {resid:.3e})")
    k = n * (n - 1) / (a * n * n - t2)
    c = (t2 - a * n) / ((n - 1) * t2)
    return fit_parameters([k * (m - c * T) for m in fam.members])


def normalized_dual(family: FamilyLike, T: np.ndarray, tol: float = DEFAULT_TOL) -> SymmetricFamily:
    """``(t2/N)`` times the dual; again a symmetric decomposition of ``T``."""
    dual = dual_of_decomposition(family, T, tol)
    T = np.asarray(T, dtype=complex)
    t2 = hs_inner(T, T)
    return fit_parameters([(t2 / dual.N) * m for m in dual.members])


def biorthogonality_error(family: FamilyLike, dual: FamilyLike) -> float:
    """``max_ij |<E_i, E~_j> - delta_ij|``."""
    e = [m.reshape(-1) for m in as_family(family).members]
    f = [m.reshape(-1) for m in as_family(dual).members]
    cross = (np.conj(np.array(f)) @ np.array(e).T).real.T
    return float(np.max(np.abs(cross - np.eye(len(e)))))
