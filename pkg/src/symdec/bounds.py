"""Bounds on the symmetry parameter ``a`` of symmetric decompositions of T.

``phi_closed_form`` is the optimal value of

    min lambda_max(A)  s.t.  A = A*, ||A||_HS = 1, <A, B> = 0

for a positive definite ``B`` with spectrum ``b``; ``phi_oracle`` reaches
the same number by building a feasible witness and by random sampling.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .family import DEFAULT_TOL, FamilyLike, as_family
from .hermitian import eig_sa, hs_inner, hs_norm

STRICT_POSITIVE_RTOL = 1e-10


def _spectrum_values(spectrum) -> np.ndarray:
    b = getattr(spectrum, "eigenvalues", spectrum)
    b = np.sort(np.asarray(b, dtype=float).reshape(-1))[::-1]
    if b.size == 0:
        raise ValueError("empty spectrum")
    if b[-1] <= 0:
        raise ValueError("spectrum must be strictly positive")
    return b


def phi_closed_form(spectrum) -> float:
    """``[(beta/b_min - 1)^2 + d - 1]^(-1/2)`` with ``beta = sum(b)``.

    Returns ``inf`` for ``d = 1`` where no feasible ``A`` exists.
    """
    b = _spectrum_values(spectrum)
    d = b.size
    denom = (b.sum() / b[-1] - 1.0) ** 2 + d - 1
    return math.inf if denom == 0 else math.sqrt(1.0 / denom)


def _two_valued_optimum(b: np.ndarray) -> np.ndarray:
    d = b.size
    beta, bd = b.sum(), b[-1]
    s = bd / math.sqrt((beta - bd) ** 2 + (d - 1) * bd**2)
    r = math.sqrt(max(0.0, 1.0 - (d - 1) * s * s))
    return np.array([s] * (d - 1) + [-r])


def _reversal_path(d: int, t: float) -> np.ndarray:
    """Real orthogonal U(t); U(0) = I and U(1) reverses the coordinate order up to signs."""
    u = np.eye(d)
    angle = t * math.pi / 2
    c, s = math.cos(angle), math.sin(angle)
    for k in range(d // 2):
        j = d - 1 - k
        u[k, k] = u[j, j] = c
        u[k, j], u[j, k] = -s, s
    return u


def orthogonal_conjugation(a: np.ndarray, b: np.ndarray, *, atol: float = 1e-12, max_iter: int = 200):
    """Find U with ``<U diag(a) U*, diag(b)> = 0``.

    ``a`` and ``b`` are sorted descending. Along the rotation path the trace
    moves continuously from ``<a, b>`` to ``<a, reversed b>``; when those have
    opposite signs (or one vanishes) bisection on the path parameter finds a
    zero. Returns ``(U, t)``.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    bmat = np.diag(b)

    def f(t: float) -> float:
        u = _reversal_path(a.size, t)
        return float(np.trace(u @ np.diag(a) @ u.T @ bmat))

    lo, hi = 0.0, 1.0
    flo, fhi = f(lo), f(hi)
    if abs(flo) <= atol:
        return _reversal_path(a.size, lo), lo
    if abs(fhi) <= atol:
        return _reversal_path(a.size, hi), hi
    if np.sign(flo) == np.sign(fhi):
        raise RuntimeError("trace does not change sign along the rotation path")
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if abs(fm) <= atol:
            return _reversal_path(a.size, mid), mid
        if np.sign(fm) == np.sign(flo):
            lo, flo = mid, fm
        else:
            hi = mid
    raise RuntimeError("path bisection did not reach the orthogonality tolerance")


@dataclass(frozen=True)
class PhiOracleResult:
    value: float
    witness: np.ndarray
    witness_orthogonality: float
    witness_norm: float
    sampled_min: float
    violations: int
    trials: int


def phi_oracle(spectrum, trials: int = 1000, *, seed: int | None = 0, tol: float = 1e-9) -> PhiOracleResult:
    """Independent estimate of ``phi`` for the spectrum ``b``.

    The witness is the two-valued vector ``(s, ..., s, -r)`` at the smallest
    feasible ``s``, conjugated by a rotation that makes it HS-orthogonal to
    ``diag(b)``; its largest eigenvalue, computed numerically, is ``value``.
    Then ``trials`` random unit-norm Hermitian matrices orthogonal to
    ``diag(b)`` are drawn; ``violations`` counts samples whose largest
    eigenvalue undercuts ``value`` by more than ``tol``.
    """
    b = _spectrum_values(spectrum)
    d = b.size
    if d < 2:
        raise ValueError("phi is only attained for d >= 2")
    a = _two_valued_optimum(b)
    u, _ = orthogonal_conjugation(a, b)
    witness = (u @ np.diag(a) @ u.T).astype(complex)
    bmat = np.diag(b).astype(complex)
    value = float(eig_sa(witness).eigenvalues[0])

    sampled_min, violations = math.inf, 0
    if trials > 0:
        rng = np.random.default_rng(seed)
        g = rng.standard_normal((trials, d, d)) + 1j * rng.standard_normal((trials, d, d))
        h = (g + np.conj(np.swapaxes(g, 1, 2))) / 2
        coeff = np.einsum("tii,i->t", h, b).real / float(b @ b)
        h = h - coeff[:, None, None] * bmat
        h = h / np.linalg.norm(h, axis=(1, 2))[:, None, None]
        # batched LAPACK for the sampling side; the witness uses the Jacobi solver
        top = np.linalg.eigvalsh(h)[:, -1]
        sampled_min = float(top.min())
        violations = int(np.sum(top < value - tol))
    return PhiOracleResult(
        value=value,
        witness=witness,
        witness_orthogonality=abs(hs_inner(witness, bmat)),
        witness_norm=hs_norm(witness),
        sampled_min=sampled_min,
        violations=violations,
        trials=trials,
    )


def condition_number(a: np.ndarray) -> float:
    w = eig_sa(a).eigenvalues
    if w[-1] <= STRICT_POSITIVE_RTOL * w[0]:
        raise ValueError("operator is not strictly positive")
    return float(w[0] / w[-1])


@dataclass(frozen=True)
class BoundsReport:
    N: int
    t1: float
    t2: float
    tau: float
    norm_inf: float
    a_lower: float
    a_upper_positive: float
    a_upper_projection: float | None
    a_upper_condition: float | None
    condition_M: float | None
    a_upper_psd: float
    x_upper_psd: float
    phi: float


def psd_upper_bound(T: np.ndarray, N: int) -> tuple[float, float, float]:
    """``(x_upper, a_upper, phi)``: no positive symmetric decomposition has larger ``x`` or ``a``."""
    w = eig_sa(T).eigenvalues
    tau, top = float(w[-1]), float(w[0])
    if tau <= 0:
        raise ValueError("T must be positive definite for the PSD bound")
    phi = phi_closed_form(w)
    x = top / (N * phi)
    return x, hs_inner(T, T) / N**2 + x * x, phi


def a_bounds(T: np.ndarray, N: int, family: FamilyLike | None = None, tol: float = DEFAULT_TOL) -> BoundsReport:
    """Every applicable bound on ``a`` for decompositions of ``T`` into ``N`` parts.

    The projection bound ``t2^2/N^2`` is filled only when ``T^2 = T``; the
    condition-number bound ``M t2/N^2`` only when a family of strictly
    positive members is supplied (otherwise ``None``).
    """
    T = np.asarray(T, dtype=complex)
    if N < 1:
        raise ValueError("N must be positive")
    w = eig_sa(T).eigenvalues
    scale = 1.0 + hs_norm(T)
    if w[-1] < -tol * scale:
        raise ValueError("T is not positive semidefinite")
    t1 = float(w.sum())
    t2 = hs_inner(T, T)
    x_up, a_up, phi = psd_upper_bound(T, N)

    proj = t2**2 / N**2 if hs_norm(T @ T - T) <= tol * scale else None

    a_cond = m_const = None
    if family is not None:
        members = as_family(family).members
        kappa_t = condition_number(T)
        try:
            kappas = [condition_number(m) for m in members]
        except ValueError:
            kappas = None
        if kappas is not None:
            m_const = min(0.25 * (math.sqrt(kappa_t * k) + 1 / math.sqrt(kappa_t * k)) ** 2 for k in kappas)
            a_cond = m_const * t2 / N**2

    return BoundsReport(
        N=N,
        t1=t1,
        t2=t2,
        tau=float(w[-1]),
        norm_inf=float(w[0]),
        a_lower=t2 / N**2,
        a_upper_positive=t2 / N,
        a_upper_projection=proj,
        a_upper_condition=a_cond,
        condition_M=m_const,
        a_upper_psd=a_up,
        x_upper_psd=x_up,
        phi=phi,
    )


def a_upper_psd_explicit(t1: float, t2: float, tau: float, norm_inf: float, d: int, N: int) -> float:
    """The same PSD bound written through ``t1``, ``tau`` and ``||T||_inf``."""
    return t2 / N**2 + (norm_inf / tau) ** 2 * ((t1 - tau) ** 2 + (d - 1) * tau**2) / N**2


__all__ = [
    "BoundsReport",
    "PhiOracleResult",
    "a_bounds",
    "a_upper_psd_explicit",
    "condition_number",
    "orthogonal_conjugation",
    "phi_closed_form",
    "phi_oracle",
    "psd_upper_bound",
]
