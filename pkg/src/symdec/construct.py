"""Building symmetric decompositions from an orthonormal operator basis.

Given ``T`` and an HS-orthonormal family ``F_1..F_{N-1}`` orthogonal to ``T``,
the operators ``R_i`` form a regular simplex of unit vectors in
``span(F)`` and ``E_i = T/N + x R_i`` is a symmetric decomposition of ``T``
for every ``x >= 0``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .bounds import psd_upper_bound
from .family import DEFAULT_TOL, SymmetricFamily, fit_parameters
from .hermitian import (
    canonical_hermitian_basis,
    eig_sa,
    gram_schmidt_operators,
    hermitian,
    hs_inner,
    hs_norm,
    random_hermitian,
)

Seed = Union[int, str]
BISECTION_RTOL = 1e-10


@dataclass(frozen=True)
class ConstructionBasis:
    T: np.ndarray
    F: tuple
    R: tuple
    mu: tuple
    rho: tuple

    @property
    def N(self) -> int:
        return len(self.R)

    @property
    def t2(self) -> float:
        return hs_inner(self.T, self.T)


def build_R(F: Sequence[np.ndarray]) -> list[np.ndarray]:
    """Simplex vertices ``R_1..R_N`` from an orthonormal ``F_1..F_{N-1}``."""
    n = len(F) + 1
    if n < 2:
        raise ValueError("need at least one F_i")
    total = sum(F[1:], np.array(F[0], dtype=complex))
    root_n, root_m = math.sqrt(n), math.sqrt(n - 1)
    rs = [total / (root_m * (root_n + 1)) - (root_n / root_m) * f for f in F]
    rs.append(total / root_m)
    return rs


def basis_from_F(T: np.ndarray, F: Sequence[np.ndarray]) -> ConstructionBasis:
    T = hermitian(T)
    R = build_R(F)
    spectra = [eig_sa(r).eigenvalues for r in R]
    return ConstructionBasis(
        T=T,
        F=tuple(np.asarray(f, dtype=complex) for f in F),
        R=tuple(R),
        mu=tuple(float(-w[-1]) for w in spectra),
        rho=tuple(float(w[0]) for w in spectra),
    )


def build_basis(T: np.ndarray, N: int, seed: Seed = "canonical") -> ConstructionBasis:
    """Orthonormal ``F`` (orthogonal to ``T``) and the matching ``R``, ``mu``, ``rho``.

    With ``seed="canonical"`` the ``F_i`` come from Gram-Schmidt on the
    canonical Hermitian basis; an integer seed draws random Hermitian seeds
    from ``numpy.random.default_rng(seed)`` instead.
    """
    T = hermitian(T)
    d = T.shape[0]
    if hs_norm(T) == 0:
        raise ValueError("T must be nonzero")
    if N < 2 or N > d * d:
        raise ValueError(f"N must lie in [2, d^2] = [2, {d * d}], got {N}")
    if seed == "canonical":
        seeds = canonical_hermitian_basis(d)
    else:
        rng = np.random.default_rng(int(seed))
        seeds = [random_hermitian(d, rng) for _ in range(d * d)]
    F = gram_schmidt_operators(seeds, [T])
    if len(F) < N - 1:
        raise ValueError("could not find enough operators orthogonal to T")
    return basis_from_F(T, F[: N - 1])


def build_family(basis: ConstructionBasis, x: float) -> SymmetricFamily:
    """``E_i = T/N + x R_i``."""
    if x < 0:
        raise ValueError("x must be non-negative")
    n = basis.N
    return fit_parameters([basis.T / n + x * r for r in basis.R])


def v_matrix(N: int) -> np.ndarray:
    """Real ``N x (N-1)`` matrix with ``E_i = T/N + x sum_j V_ij F_j``."""
    if N < 2:
        raise ValueError("N must be at least 2")
    root_n = math.sqrt(N)
    v = np.ones((N, N - 1))
    v[: N - 1, :] += np.eye(N - 1) * (-root_n - N)
    v[N - 1, :] = root_n + 1
    return v / (math.sqrt(N - 1) * (root_n + 1))


def a_from_x(x: float, t2: float, N: int) -> float:
    return t2 / N**2 + x * x


def b_from_x(x: float, t2: float, N: int) -> float:
    return t2 / N**2 - x * x / (N - 1)


def x_from_a(a: float, t2: float, N: int) -> float:
    excess = a - t2 / N**2
    if excess < 0:
        if excess > -1e-15 * max(1.0, t2):
            return 0.0
        raise ValueError("a is below t2/N^2")
    return math.sqrt(excess)


def recover_x(members: Sequence[np.ndarray], T: np.ndarray) -> list[float]:
    """``||E_i - T/N||_HS`` for each member; equal to ``x`` for constructed families."""
    n = len(members)
    return [hs_norm(m - T / n) for m in members]


@dataclass(frozen=True)
class PsdWindow:
    x_sufficient: float
    x_exact: float
    x_upper: float
    a_sufficient: float
    a_exact: float
    tau: float
    iterations: int

    def a_at(self, x: float, t2: float, N: int) -> float:
        return a_from_x(x, t2, N)


def min_member_eigenvalue(basis: ConstructionBasis, x: float) -> float:
    n = basis.N
    return min(float(eig_sa(basis.T / n + x * r).eigenvalues[-1]) for r in basis.R)


def psd_window(basis: ConstructionBasis, *, rtol: float = BISECTION_RTOL, max_iter: int = 200) -> PsdWindow:
    """Range of ``x`` keeping every ``E_i`` positive semidefinite.

    ``x_sufficient = tau / (N max mu_i)`` is the closed-form guarantee.
    ``x_exact`` is the largest feasible ``x`` for this basis: the smallest
    eigenvalue of ``T/N + x R_i`` is concave in ``x`` and positive at 0, so
    the feasible set is an interval and bisection between ``x_sufficient``
    and the PSD upper bound locates its end. The returned value is the last
    feasible bracket end.
    """
    T, n = basis.T, basis.N
    tau = float(eig_sa(T).eigenvalues[-1])
    if tau <= 0:
        raise ValueError("T must be positive definite")
    x_suf = tau / (n * max(basis.mu))
    x_up, _, _ = psd_upper_bound(T, n)

    lo, hi = x_suf, max(x_up, x_suf)
    if min_member_eigenvalue(basis, hi) >= 0:
        hi *= 2
        if min_member_eigenvalue(basis, hi) >= 0:
            raise RuntimeError("members remain positive beyond twice the PSD upper bound")
    it = 0
    while hi - lo > rtol * hi and it < max_iter:
        mid = 0.5 * (lo + hi)
        if min_member_eigenvalue(basis, mid) >= 0:
            lo = mid
        else:
            hi = mid
        it += 1
    if hi - lo > rtol * hi:
        raise RuntimeError("bisection did not converge")
    t2 = basis.t2
    return PsdWindow(
        x_sufficient=x_suf,
        x_exact=lo,
        x_upper=x_up,
        a_sufficient=a_from_x(x_suf, t2, n),
        a_exact=a_from_x(lo, t2, n),
        tau=tau,
        iterations=it,
    )


def basis_to_json_dict(basis: ConstructionBasis) -> dict:
    return {"T": basis.T, "F": list(basis.F), "R": list(basis.R), "mu": list(basis.mu), "rho": list(basis.rho)}


__all__ = [
    "ConstructionBasis",
    "DEFAULT_TOL",
    "PsdWindow",
    "a_from_x",
    "b_from_x",
    "basis_from_F",
    "basis_to_json_dict",
    "build_R",
    "build_basis",
    "build_family",
    "min_member_eigenvalue",
    "psd_window",
    "recover_x",
    "v_matrix",
    "x_from_a",
]
