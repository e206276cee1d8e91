"""Operator families: fitting the symmetry law, verifying decompositions.

A family ``E_1..E_N`` is symmetric with parameters ``(a, b)`` when its
Hilbert-Schmidt Gram matrix is ``a`` on the diagonal and ``b`` off it. The
fit uses the diagonal and off-diagonal means, so ``N a + N(N-1) b`` is always
exactly ``||sum E_i||^2``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .hermitian import eig_sa, gram_matrix, hs_inner, hs_norm, is_psd

DEFAULT_TOL = 1e-8
# is_projection <=> absorb_dev <= PROJECTION_C * tol * (1 + ||T||_HS)
PROJECTION_C = 10.0


@dataclass(frozen=True)
class SymmetricFamily:
    members: tuple
    gram: np.ndarray
    a_fit: float
    b_fit: float
    max_dev: float
    b_defined: bool = True

    @property
    def N(self) -> int:
        return len(self.members)

    @property
    def d(self) -> int:
        return self.members[0].shape[0]

    def is_symmetric(self, tol: float = DEFAULT_TOL) -> bool:
        return self.max_dev <= tol

    def total(self) -> np.ndarray:
        return sum(self.members[1:], self.members[0].copy())


FamilyLike = Union[SymmetricFamily, Sequence[np.ndarray]]


def as_family(family: FamilyLike) -> SymmetricFamily:
    return family if isinstance(family, SymmetricFamily) else fit_parameters(family)


def fit_parameters(members: Sequence[np.ndarray]) -> SymmetricFamily:
    """Fit ``(a, b)`` as the mean diagonal and off-diagonal Gram entries.

    Never fails on asymmetric input; ``max_dev`` (the largest distance of a
    Gram entry from its fitted value) records how far off the law it is.
    For a single member ``b`` is undefined and stored as 0.
    """
    members = tuple(np.asarray(m, dtype=complex) for m in members)
    if not members:
        raise ValueError("family must have at least one member")
    g = gram_matrix(members)
    n = len(members)
    diag = np.diag(g)
    a = float(diag.mean())
    dev = float(np.max(np.abs(diag - a)))
    if n == 1:
        return SymmetricFamily(members, g, a, 0.0, dev, b_defined=False)
    off = g[~np.eye(n, dtype=bool)]
    b = float(off.mean())
    dev = max(dev, float(np.max(np.abs(off - b))))
    return SymmetricFamily(members, g, a, b, dev)


@dataclass(frozen=True)
class DecompositionReport:
    residual: float
    b_identity_dev: float
    trace_identity_dev: float
    degenerate: bool
    degenerate_weights: list | None
    decomposes: bool
    symmetric: bool
    b_identity_bound: float
    trace_identity_bound: float
    consistent: bool

    @property
    def ok(self) -> bool:
        return self.decomposes and self.symmetric


def _check_dims(members, T) -> None:
    for m in members:
        if m.shape != T.shape:
            raise ValueError(f"dimension mismatch: member {m.shape} vs T {T.shape}")


def verify_decomposition(family: FamilyLike, T: np.ndarray, tol: float = DEFAULT_TOL) -> DecompositionReport:
    """Check ``sum E_i = T`` together with the two identities that pin ``b`` and ``Tr[E_i T]``.

    ``b_identity_dev`` is ``|b - (t2 - N a)/(N(N-1))|`` and
    ``trace_identity_dev`` is ``max_i |Tr[E_i T] - t2/N|``. Both are controlled
    by the residual: with ``r = ||sum E_i - T||`` and ``S = sum E_i``,

    * ``b_identity_dev = |‖S‖² - t2| / (N(N-1)) <= r(2‖T‖ + r) / (N(N-1))``
    * ``trace_identity_dev <= r(2‖T‖ + r)/N + N max_dev + r max_i ‖E_i‖``

    so when ``r`` and ``max_dev`` are both at most ``tol`` the deviations are
    at most ``c tol`` with ``c = (2‖T‖ + tol)/N + N + max_i ‖E_i‖``.
    ``consistent`` records that the measured deviations respect these bounds.
    """
    fam = as_family(family)
    T = np.asarray(T, dtype=complex)
    _check_dims(fam.members, T)
    n = fam.N
    t_norm = hs_norm(T)
    t2 = hs_inner(T, T)
    scale = 1.0 + t_norm
    resid = hs_norm(fam.total() - T)

    if n > 1:
        b_dev = abs(fam.b_fit - (t2 - n * fam.a_fit) / (n * (n - 1)))
        b_bound = resid * (2 * t_norm + resid) / (n * (n - 1))
    else:
        b_dev = b_bound = 0.0
    traces = np.array([hs_inner(m, T) for m in fam.members])
    trace_dev = float(np.max(np.abs(traces - t2 / n)))
    max_member = max(hs_norm(m) for m in fam.members)
    trace_bound = resid * (2 * t_norm + resid) / n + n * fam.max_dev + resid * max_member
    slop = 1e-12 * scale**2
    consistent = b_dev <= b_bound + slop and trace_dev <= trace_bound + slop

    degenerate, weights = False, None
    if t2 > 0:
        w = traces / t2
        worst = max(hs_norm(m - wi * T) for m, wi in zip(fam.members, w))
        if worst <= tol * t_norm and abs(w.sum() - 1.0) <= tol:
            degenerate, weights = True, [float(x) for x in w]

    return DecompositionReport(
        residual=resid,
        b_identity_dev=float(b_dev),
        trace_identity_dev=trace_dev,
        degenerate=degenerate,
        degenerate_weights=weights,
        decomposes=resid <= tol * scale,
        symmetric=fam.max_dev <= tol * scale,
        b_identity_bound=float(b_bound),
        trace_identity_bound=float(trace_bound),
        consistent=bool(consistent),
    )


@dataclass(frozen=True)
class RankOneReport:
    proportional: bool
    weights: list
    max_residual: float


def _members(family: FamilyLike) -> list[np.ndarray]:
    if isinstance(family, SymmetricFamily):
        return list(family.members)
    return [np.asarray(m, dtype=complex) for m in family]


def _require_positive_decomposition(members, T, tol) -> float:
    _check_dims(members, T)
    scale = 1.0 + hs_norm(T)
    if not is_psd(T, tol):
        raise ValueError("T is not positive semidefinite")
    if not all(is_psd(m, tol) for m in members):
        raise ValueError("family is not positive")
    resid = hs_norm(sum(members[1:], members[0].copy()) - T)
    if resid > tol * scale:
        raise ValueError(f"family does not sum to T (residual {resid:.3e})")
    return scale


def check_rank_one_T(family: FamilyLike, T: np.ndarray, tol: float = DEFAULT_TOL) -> RankOneReport:
    """Positive decompositions of a rank-one ``T`` are forced to be ``t_i T``.

    Returns the weights ``t_i = <E_i, T>/t2``; ``proportional`` is False only
    if some member is not a multiple of ``T``, which means the inputs were
    not what they claimed to be.
    """
    members = _members(family)
    T = np.asarray(T, dtype=complex)
    w = eig_sa(T).eigenvalues
    scale = 1.0 + hs_norm(T)
    if w[0] <= tol * scale or (len(w) > 1 and abs(w[1]) > tol * scale) or w[-1] < -tol * scale:
        raise ValueError("T is not positive of rank one")
    _require_positive_decomposition(members, T, tol)
    t2 = hs_inner(T, T)
    weights = [hs_inner(m, T) / t2 for m in members]
    resid = max(hs_norm(m - t * T) for m, t in zip(members, weights))
    ok = resid <= tol * scale and all(-tol <= t <= 1 + tol for t in weights)
    return RankOneReport(bool(ok), weights, resid)


@dataclass(frozen=True)
class ProjectionReport:
    is_projection: bool
    absorb_dev: float
    consistent: bool


def check_projection_characterization(
    family: FamilyLike, T: np.ndarray, tol: float = DEFAULT_TOL
) -> ProjectionReport:
    """Compare "T is a projection" with "T E_i = E_i T = E_i for every i"."""
    members = _members(family)
    T = np.asarray(T, dtype=complex)
    scale = _require_positive_decomposition(members, T, tol)
    is_proj = hs_norm(T @ T - T) <= tol * scale
    absorb = max(hs_norm(T @ m - m) + hs_norm(m @ T - m) for m in members)
    absorbs = absorb <= PROJECTION_C * tol * scale
    return ProjectionReport(bool(is_proj), float(absorb), bool(is_proj == absorbs))


@dataclass(frozen=True)
class LocalityReport:
    beta: complex
    alpha_spread: float
    residual_max: float
    alphas: list
    is_local: bool


def check_local_decomposition(
    members: FamilyLike, T: np.ndarray, samples, tol: float = DEFAULT_TOL
) -> LocalityReport:
    """Fit ``sum E_i x = alpha(x) T x`` sample by sample.

    ``alpha(x) = <Tx, Sx> / <Tx, Tx>`` is the one-dimensional least-squares
    coefficient; the residual for each sample is measured relative to
    ``||Tx||``. A local decomposition has all alphas equal (to ``beta``) and
    zero residuals.
    """
    ms = _members(members)
    T = np.asarray(T, dtype=complex)
    _check_dims(ms, T)
    samples = [np.asarray(x, dtype=complex).reshape(-1) for x in samples]
    if not samples:
        raise ValueError("no sample vectors given")
    w = eig_sa(T).eigenvalues
    if np.min(np.abs(w)) <= tol * (1.0 + hs_norm(T)):
        raise ValueError("T is singular")
    s = sum(ms[1:], ms[0].copy())
    alphas, resids = [], []
    for x in samples:
        if x.shape != (T.shape[0],) or np.linalg.norm(x) == 0:
            raise ValueError("sample vectors must be nonzero and of length d")
        tx, sx = T @ x, s @ x
        alpha = np.vdot(tx, sx) / np.vdot(tx, tx)
        alphas.append(complex(alpha))
        resids.append(float(np.linalg.norm(sx - alpha * tx) / np.linalg.norm(tx)))
    a = np.array(alphas)
    spread = float(np.max(np.abs(a[:, None] - a[None, :])))
    beta = complex(a.mean())
    resid_max = max(resids)
    local = resid_max <= tol and spread <= tol * (1.0 + abs(beta))
    return LocalityReport(beta, spread, resid_max, alphas, bool(local))


def linear_independence_rank(family: FamilyLike, rtol: float = 1e-9) -> int:
    """Rank of the Gram matrix, counting eigenvalues above ``rtol * ||G||``."""
    fam = as_family(family)
    w = eig_sa(fam.gram.astype(complex)).eigenvalues
    top = float(np.max(np.abs(w)))
    if top == 0.0:
        return 0
    return int(np.sum(w > rtol * top))
