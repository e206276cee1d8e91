"""Welch-type lower bounds on pairwise Hilbert-Schmidt inner products.

All reports carry ``lhs``, ``rhs`` and ``slack = lhs - rhs`` together with
the deviations that certify the equality case.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .hermitian import gram_matrix, hs_norm, identity, is_psd

EQUALITY_TOL = 1e-8
NORMALIZATION_TOL = 1e-8
CLAMP_TOL = 1e-12


class WelchInputError(ValueError):
    pass


@dataclass(frozen=True)
class WeightVector:
    v: np.ndarray
    coefficient: float

    @classmethod
    def of(cls, v) -> "WeightVector":
        v = np.asarray(v, dtype=float).reshape(-1)
        if v.size == 0 or np.any(v <= 0) or not np.all(np.isfinite(v)):
            raise WelchInputError("weights must be finite and strictly positive")
        return cls(v, float(v.sum() ** 2 / (v @ v)))

    @classmethod
    def flat(cls, n: int) -> "WeightVector":
        return cls.of(np.ones(n))


@dataclass(frozen=True)
class WelchReport:
    lhs: float
    rhs: float
    slack: float
    equality: bool
    equiangular_dev: float
    tightness_dev: float
    rank_one_dev: float | None = None
    rhs_weighted: float | None = None
    clamped: int = 0
    extra: dict = field(default_factory=dict)

    def holds(self, tol: float = 1e-9) -> bool:
        return self.slack >= -tol * (1.0 + abs(self.rhs))


def _prepare(members) -> tuple[list[np.ndarray], np.ndarray, int, int]:
    ms = [np.asarray(m, dtype=complex) for m in members]
    if len(ms) < 2:
        raise WelchInputError("need at least two members")
    g = gram_matrix(ms)
    return ms, g, len(ms), ms[0].shape[0]


def _equiangular_dev(g: np.ndarray) -> float:
    off = g[~np.eye(g.shape[0], dtype=bool)]
    return float(off.max() - off.min())


def _tightness_dev(ms, v: np.ndarray) -> float:
    d = ms[0].shape[0]
    s = sum(vi * m for vi, m in zip(v, ms))
    level = float(np.trace(s).real) / d
    return hs_norm(s - level * identity(d))


def simplex_bound(members: Sequence[np.ndarray]) -> WelchReport:
    """``max_{i!=j} <E_i, E_j> >= [ (sum Tr E_j)^2 / d - sum <E_j, E_j> ] / (N(N-1))``.

    Equality holds iff the family is equiangular and ``sum E_i`` is a
    multiple of the identity.
    """
    ms, g, n, d = _prepare(members)
    lhs = float(np.max(g[~np.eye(n, dtype=bool)]))
    total_trace = sum(float(np.trace(m).real) for m in ms)
    rhs = (total_trace**2 / d - float(np.trace(g))) / (n * (n - 1))
    eq_dev = _equiangular_dev(g)
    tight = _tightness_dev(ms, np.ones(n))
    return WelchReport(lhs, rhs, lhs - rhs, eq_dev <= EQUALITY_TOL and tight <= EQUALITY_TOL, eq_dev, tight)


def _normalized_positive(members, auto_normalize: bool) -> list[np.ndarray]:
    out = []
    for m in members:
        m = np.asarray(m, dtype=complex)
        if not is_psd(m, NORMALIZATION_TOL):
            raise WelchInputError("members must be positive semidefinite")
        norm = hs_norm(m)
        if abs(norm**2 - 1.0) > NORMALIZATION_TOL:
            if not auto_normalize:
                raise WelchInputError(f"members must satisfy Tr[E^2] = 1 (got {norm**2:.6g})")
            m = m / norm
        out.append(m)
    return out


def _weights(weights, n: int) -> WeightVector:
    if weights is None:
        return WeightVector.flat(n)
    w = weights if isinstance(weights, WeightVector) else WeightVector.of(weights)
    if w.v.size != n:
        raise WelchInputError(f"{w.v.size} weights for {n} members")
    return w


def _weighted_terms(v: np.ndarray, d: int) -> tuple[float, float]:
    """``(d^-1 (sum v)^2 - sum v^2, sum_{i!=j} v_i v_j)``."""
    s1, s2 = float(v.sum()), float(v @ v)
    return s1 * s1 / d - s2, s1 * s1 - s2


def weighted_welch(members, weights=None, *, auto_normalize: bool = False) -> WelchReport:
    """Weighted bound for positive members with ``Tr[E_i^2] = 1``.

    Equality iff every member is a rank-one projection and
    ``sum v_i E_i = (sum v_i / d) I``. ``rank_one_dev`` is ``max |Tr E_i - 1|``,
    which vanishes exactly for rank-one projections given ``Tr[E_i^2] = 1``.
    """
    ms = _normalized_positive(members, auto_normalize)
    ms, g, n, d = _prepare(ms)
    w = _weights(weights, n)
    v = w.v
    off = ~np.eye(n, dtype=bool)
    lhs = float((np.outer(v, v) * g)[off].sum())
    rhs, _ = _weighted_terms(v, d)
    rank_one = max(abs(float(np.trace(m).real) - 1.0) for m in ms)
    tight = _tightness_dev(ms, v)
    eq_dev = _equiangular_dev(g)
    equality = rank_one <= EQUALITY_TOL and tight <= EQUALITY_TOL
    return WelchReport(lhs, rhs, lhs - rhs, equality, eq_dev, tight, rank_one, extra={"weight_coefficient": w.coefficient})


def holder_welch(members, weights=None, p: float = 2.0, *, auto_normalize: bool = False) -> WelchReport:
    """``sum_{i!=j} v_i v_j <E_i,E_j>^p >= R^p / S^(p-1)``.

    Here ``R = d^-1 (sum v)^2 - sum v^2`` and ``S = sum_{i!=j} v_i v_j``.
    Requires ``p > 1`` and weight coefficient ``[v] >= d`` (so ``R >= 0``).
    Inner products that are negative only by roundoff are clamped to zero and
    counted in ``clamped``.
    """
    if not p > 1:
        raise WelchInputError("p must exceed 1")
    ms = _normalized_positive(members, auto_normalize)
    ms, g, n, d = _prepare(ms)
    w = _weights(weights, n)
    if w.coefficient < d * (1 - 1e-12):
        raise WelchInputError(f"weight coefficient {w.coefficient:.6g} is below d = {d}")
    v = w.v
    off = ~np.eye(n, dtype=bool)
    inner = g[off]
    if np.any(inner < -CLAMP_TOL):
        raise WelchInputError("negative inner product between positive members")
    clamped = int(np.sum(inner < 0))
    inner = np.clip(inner, 0.0, None)
    vv = np.outer(v, v)[off]
    lhs = float((vv * inner**p).sum())
    r, s = _weighted_terms(v, d)
    r = max(r, 0.0)
    rhs = r**p / s ** (p - 1)
    rank_one = max(abs(float(np.trace(m).real) - 1.0) for m in ms)
    tight = _tightness_dev(ms, v)
    eq_dev = _equiangular_dev(g)
    equality = rank_one <= EQUALITY_TOL and tight <= EQUALITY_TOL and eq_dev <= EQUALITY_TOL
    return WelchReport(
        lhs, rhs, lhs - rhs, equality, eq_dev, tight, rank_one, clamped=clamped,
        extra={"p": p, "weight_coefficient": w.coefficient},
    )


def min_angle_bound(members, weights=None, *, auto_normalize: bool = False, tol: float = 1e-9) -> WelchReport:
    """``max_{i!=j} <E_i,E_j> >= (N-d)/(d(N-1)) >= R/S`` for any admissible weights.

    ``rhs`` is the flat-weight middle term and ``rhs_weighted`` the weighted
    one; ``extra["flat_dominates"]`` confirms ``rhs_weighted <= rhs``.
    """
    ms = _normalized_positive(members, auto_normalize)
    ms, g, n, d = _prepare(ms)
    w = _weights(weights, n)
    if w.coefficient < d * (1 - 1e-12):
        raise WelchInputError(f"weight coefficient {w.coefficient:.6g} is below d = {d}")
    lhs = float(np.max(g[~np.eye(n, dtype=bool)]))
    rhs_flat = (n - d) / (d * (n - 1))
    r, s = _weighted_terms(w.v, d)
    rhs_w = r / s
    rank_one = max(abs(float(np.trace(m).real) - 1.0) for m in ms)
    tight = _tightness_dev(ms, w.v)
    eq_dev = _equiangular_dev(g)
    equality = rank_one <= EQUALITY_TOL and tight <= EQUALITY_TOL and eq_dev <= EQUALITY_TOL
    return WelchReport(
        lhs, rhs_flat, lhs - rhs_flat, equality, eq_dev, tight, rank_one, rhs_weighted=rhs_w,
        extra={"flat_dominates": bool(rhs_w <= rhs_flat + tol), "weight_coefficient": w.coefficient},
    )


def flat_square_bound(N: int, d: int) -> float:
    """Flat-weight ``p = 2`` value ``N (N-d)^2 / ((N-1) d^2)``."""
    return N * (N - d) ** 2 / ((N - 1) * d * d)


__all__ = [
    "WeightVector",
    "WelchInputError",
    "WelchReport",
    "holder_welch",
    "min_angle_bound",
    "simplex_bound",
    "weighted_welch",
    "flat_square_bound",
]
