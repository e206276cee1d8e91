import math

import numpy as np
import pytest

from symdec.construct import build_basis, build_family

SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)
I2 = np.eye(2, dtype=complex)
SIC_X = math.sqrt(2) / 4


def random_pd(d, rng, floor=0.1):
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    return g @ g.conj().T / d + floor * np.eye(d)


def random_psd_unit(d, rng):
    """Random PSD matrix of random rank with Tr[E^2] = 1."""
    k = int(rng.integers(1, d + 1))
    g = rng.standard_normal((d, k)) + 1j * rng.standard_normal((d, k))
    e = g @ g.conj().T
    return e / np.linalg.norm(e)


def tr(a, b):
    return np.trace(a @ b).real


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def sic_basis():
    return build_basis(I2, 4)


@pytest.fixture
def sic_family(sic_basis):
    return build_family(sic_basis, SIC_X)


_ACCEPTANCE_LINES = []


@pytest.fixture
def acceptance_log():
    return _ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
