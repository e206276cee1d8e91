"""The two-dimensional example ``T = diag(1, u)``, ``N = 4``, ``u >= 1``.

Closed forms for the spectra of ``R_1..R_4``, the sufficient and necessary
bounds on ``a``, the optimal ``a`` and a numerical search for it.
"""

from __future__ import annotations

import csv
import io
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import astuple, dataclass, fields

import numpy as np

from .bounds import psd_upper_bound
from .construct import ConstructionBasis, a_from_x, basis_from_F, psd_window

N = 4
GAP_CONSTANT = 27 / 800 * (125 * math.sqrt(29) - 673)


def _check_u(u: float) -> None:
    if not u >= 1:
        raise ValueError(f"u must be >= 1, got {u}")


def T_of(u: float) -> np.ndarray:
    return np.diag([1.0, u]).astype(complex)


def example_F(u: float) -> list[np.ndarray]:
    f1 = np.array([[0, 1], [1, 0]], dtype=complex) / math.sqrt(2)
    f2 = np.array([[0, 1j], [-1j, 0]], dtype=complex) / math.sqrt(2)
    f3 = np.diag([u, -1.0]).astype(complex) / math.sqrt(u * u + 1)
    return [f1, f2, f3]


def example_basis(u: float) -> ConstructionBasis:
    _check_u(u)
    return basis_from_F(T_of(u), example_F(u))


def _denom(u: float) -> float:
    return 6 * math.sqrt(3) * math.sqrt(u * u + 1)


def eigs_R12(u: float) -> tuple[float, float]:
    """Shared spectrum of ``R_1`` and ``R_2``, largest first."""
    root = math.sqrt((u - 1) ** 2 + 4 * (13 * u * u + u + 13))
    return ((u - 1 + root) / _denom(u), (u - 1 - root) / _denom(u))


def eigs_R3(u: float) -> tuple[float, float]:
    root = math.sqrt(25 * (u - 1) ** 2 + 4 * (u * u + 25 * u + 1))
    return ((5 * (1 - u) + root) / _denom(u), (5 * (1 - u) - root) / _denom(u))


def eigs_R4(u: float) -> tuple[float, float]:
    root = 3 * math.sqrt((u - 1) ** 2 + 4 * (u * u + u + 1))
    return ((3 * (u - 1) + root) / _denom(u), (3 * (u - 1) - root) / _denom(u))


def closed_form_spectra(u: float) -> list[tuple[float, float]]:
    """Spectra of ``R_1, R_2, R_3, R_4`` in that order."""
    r12 = eigs_R12(u)
    return [r12, r12, eigs_R3(u), eigs_R4(u)]


def x_lb(u: float) -> float:
    _check_u(u)
    mu2 = -eigs_R3(u)[1]
    return 1 / (4 * mu2)


def a_lb(u: float) -> float:
    _check_u(u)
    s = u * u + 1
    return s / 16 + 27 * s / (4 * (5 * u + math.sqrt(u * (29 * u + 50) + 29) - 5) ** 2)


def x_ub(u: float) -> float:
    _check_u(u)
    return u * math.sqrt(1 + u * u) / 4


def a_ub(u: float) -> float:
    _check_u(u)
    return (1 + u * u) ** 2 / 16


def a_opt_closed(u: float) -> float:
    _check_u(u)
    s = u * u + 1
    r = math.sqrt(s)
    inner = -5 * r * u * u + 5 * r + s * math.sqrt(u * (25 * u + 4) + 25)
    return (s + 27 * inner**2 / (4 * (u * (u + 25) + 1) ** 2)) / 16


def a_opt_search(u: float, tol: float = 1e-10) -> float:
    """Largest ``a`` with all four members positive, found by bisection in ``x``."""
    window = psd_window(example_basis(u), rtol=tol)
    return a_from_x(window.x_exact, u * u + 1, N)


@dataclass(frozen=True)
class SweepRow:
    u: float
    a_lb: float
    a_ub: float
    a_opt_closed: float
    a_opt_search: float
    x_suf: float
    x_exact: float
    gap: float


CSV_HEADER = [f.name for f in fields(SweepRow)]


def sweep_row(u: float, tol: float = 1e-10) -> SweepRow:
    basis = example_basis(u)
    window = psd_window(basis, rtol=tol)
    t2 = u * u + 1
    a_search = a_from_x(window.x_exact, t2, N)
    lb = a_lb(u)
    return SweepRow(u, lb, a_ub(u), a_opt_closed(u), a_search, window.x_sufficient, window.x_exact, a_search - lb)


def _workers() -> int:
    try:
        return max(1, int(os.environ.get("SYMDEC_THREADS", "1")))
    except ValueError:
        return 1


def sweep(u_min: float = 1.0, u_max: float = 3.0, steps: int = 201, tol: float = 1e-10) -> list[SweepRow]:
    """Rows on a uniform grid of ``steps`` points in ``[u_min, u_max]``.

    Rows are independent; ``SYMDEC_THREADS`` caps the worker pool.
    """
    if not (1 <= u_min < u_max) or steps < 2:
        raise ValueError("need 1 <= u_min < u_max and steps >= 2")
    grid = np.linspace(u_min, u_max, steps)
    workers = _workers()
    if workers == 1:
        return [sweep_row(float(u), tol) for u in grid]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda u: sweep_row(float(u), tol), grid))


def sweep_csv(rows: list[SweepRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for row in rows:
        writer.writerow([repr(float(v)) for v in astuple(row)])
    return buf.getvalue()


def a_ub_numeric(u: float) -> float:
    return psd_upper_bound(T_of(u), N)[1]
