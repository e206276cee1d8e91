"""Dense complex Hermitian linear algebra.

Matrices are plain ``numpy`` complex arrays of shape ``(d, d)``. The helpers
here validate self-adjointness, compute Hilbert-Schmidt inner products and
spectra (cyclic complex Jacobi), and orthonormalize families of operators.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

HERMITICITY_RTOL = 1e-9
JACOBI_RTOL = 1e-13
JACOBI_MAX_SWEEPS = 100
GS_DROP_RTOL = 1e-8


class NotHermitianError(ValueError):
    pass


class ConvergenceError(RuntimeError):
    pass


def hermitian(entries, *, rtol: float = HERMITICITY_RTOL) -> np.ndarray:
    """Return ``entries`` as a symmetrized complex Hermitian matrix.

    Inputs whose entrywise asymmetry exceeds ``rtol * (1 + max|entry|)`` are
    rejected; anything within tolerance is replaced by ``(A + A*) / 2``.
    """
    a = np.array(entries, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
        raise NotHermitianError(f"expected a non-empty square matrix, got shape {a.shape}")
    asym = np.max(np.abs(a - a.conj().T))
    scale = 1.0 + np.max(np.abs(a))
    if asym > rtol * scale:
        raise NotHermitianError(f"matrix is not Hermitian (asymmetry {asym:.3e})")
    return (a + a.conj().T) / 2


def identity(d: int) -> np.ndarray:
    return np.eye(d, dtype=complex)


def hs_inner(a: np.ndarray, b: np.ndarray) -> float:
    """Hilbert-Schmidt inner product ``Tr[AB]`` of two self-adjoint matrices."""
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    # Tr[AB] = sum_jk A_jk B_kj = sum_jk A_jk conj(B_jk) for Hermitian B
    return float(np.vdot(b, a).real)


def hs_norm(a: np.ndarray) -> float:
    return float(np.linalg.norm(a))


def gram_matrix(members: Sequence[np.ndarray]) -> np.ndarray:
    """Real symmetric matrix of pairwise Hilbert-Schmidt inner products."""
    if not members:
        return np.zeros((0, 0))
    shape = members[0].shape
    for m in members:
        if m.shape != shape:
            raise ValueError(f"dimension mismatch: {m.shape} vs {shape}")
    flat = np.array([m.reshape(-1) for m in members])
    g = (flat.conj() @ flat.T).real
    return (g + g.T) / 2


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues sorted descending, eigenvectors as matching columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def _jacobi_pass(a: np.ndarray, v: np.ndarray, p: int, q: int) -> None:
    apq = a[p, q]
    mag = abs(apq)
    if mag == 0.0:
        return
    phase = apq / mag
    theta = (a[q, q].real - a[p, p].real) / (2.0 * mag)
    if theta == 0.0:
        t = 1.0
    else:
        t = np.sign(theta) / (abs(theta) + np.sqrt(theta * theta + 1.0))
    c = 1.0 / np.sqrt(t * t + 1.0)
    s = t * c
    # J = D P with D = diag(.., conj(phase) at q, ..) makes the (p, q) entry real
    j = np.array([[c, s], [-s * np.conj(phase), c * np.conj(phase)]])
    idx = [p, q]
    a[:, idx] = a[:, idx] @ j
    a[idx, :] = j.conj().T @ a[idx, :]
    a[p, q] = a[q, p] = 0.0
    a[p, p] = a[p, p].real
    a[q, q] = a[q, q].real
    v[:, idx] = v[:, idx] @ j


def eig_sa(a: np.ndarray, *, rtol: float = JACOBI_RTOL, max_sweeps: int = JACOBI_MAX_SWEEPS) -> Spectrum:
    """Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi rotations.

    Sweeps stop once the off-diagonal Frobenius mass drops to ``rtol`` times
    the Hilbert-Schmidt norm of the input. Eigenvalues come back sorted
    descending; ties keep the order in which the rotations left them.

    Raises
    ------
    NotHermitianError
        If ``a`` is not self-adjoint within tolerance.
    ConvergenceError
        If ``max_sweeps`` sweeps do not reach the stopping criterion.
    """
    work = hermitian(a)
    d = work.shape[0]
    vecs = np.eye(d, dtype=complex)
    target = rtol * hs_norm(work)
    off_mask = ~np.eye(d, dtype=bool)
    for _ in range(max_sweeps + 1):
        off = float(np.linalg.norm(work[off_mask]))
        if off <= target:
            break
        for p in range(d - 1):
            for q in range(p + 1, d):
                _jacobi_pass(work, vecs, p, q)
    else:
        raise ConvergenceError(f"Jacobi did not converge in {max_sweeps} sweeps (off-diagonal {off:.3e})")
    w = np.diag(work).real.copy()
    order = np.argsort(-w, kind="stable")
    return Spectrum(w[order], vecs[:, order])


def eigvals_sa(a: np.ndarray) -> np.ndarray:
    return eig_sa(a).eigenvalues


def lambda_min(a: np.ndarray) -> float:
    return float(eig_sa(a).eigenvalues[-1])


def lambda_max(a: np.ndarray) -> float:
    return float(eig_sa(a).eigenvalues[0])


def is_psd(a: np.ndarray, tol: float = 1e-8) -> bool:
    """True iff ``lambda_min(a) >= -tol * (1 + ||a||_inf)``."""
    w = eig_sa(a).eigenvalues
    return bool(w[-1] >= -tol * (1.0 + max(abs(w[0]), abs(w[-1]))))


def gram_schmidt_operators(
    seeds: Iterable[np.ndarray],
    orthogonal_to: Iterable[np.ndarray] = (),
    *,
    drop_rtol: float = GS_DROP_RTOL,
) -> list[np.ndarray]:
    """HS-orthonormal family spanning the projection of ``seeds`` off ``orthogonal_to``.

    Each seed is projected against an orthonormalized copy of
    ``orthogonal_to`` and against the outputs accepted so far (twice, for
    numerical stability). A seed whose remainder has HS norm below
    ``drop_rtol * (norm before projection + 1)`` is dropped.
    """
    fixed: list[np.ndarray] = []
    for m in orthogonal_to:
        r = np.array(m, dtype=complex)
        for _ in range(2):
            for f in fixed:
                r = r - hs_inner(r, f) * f
        n = hs_norm(r)
        if n > drop_rtol * (hs_norm(m) + 1.0):
            fixed.append(r / n)

    out: list[np.ndarray] = []
    for seed in seeds:
        r = np.array(seed, dtype=complex)
        before = hs_norm(r)
        for _ in range(2):
            for f in fixed + out:
                r = r - hs_inner(r, f) * f
        n = hs_norm(r)
        if n <= drop_rtol * (before + 1.0):
            continue
        out.append((r + r.conj().T) / (2 * n))
    return out


def canonical_hermitian_basis(d: int) -> list[np.ndarray]:
    """Orthonormal basis of d x d Hermitian matrices.

    Order: diagonal units, then symmetric pairs ``(E_jk + E_kj)/sqrt2`` for
    j < k, then antisymmetric pairs ``i(E_jk - E_kj)/sqrt2``.
    """
    basis = []
    for k in range(d):
        m = np.zeros((d, d), dtype=complex)
        m[k, k] = 1.0
        basis.append(m)
    pairs = [(j, k) for j in range(d) for k in range(j + 1, d)]
    for j, k in pairs:
        m = np.zeros((d, d), dtype=complex)
        m[j, k] = m[k, j] = 1 / np.sqrt(2)
        basis.append(m)
    for j, k in pairs:
        m = np.zeros((d, d), dtype=complex)
        m[j, k] = 1j / np.sqrt(2)
        m[k, j] = -1j / np.sqrt(2)
        basis.append(m)
    return basis


def random_hermitian(d: int, rng: np.random.Generator) -> np.ndarray:
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    return (g + g.conj().T) / 2
