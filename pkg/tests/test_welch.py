import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from symdec.welch import (
    WeightVector,
    WelchInputError,
    flat_square_bound,
    holder_welch,
    min_angle_bound,
    simplex_bound,
    weighted_welch,
)

from conftest import I2, SX, SZ, random_psd_unit, tr


@pytest.fixture
def unit_sic(sic_family):
    return [2 * m for m in sic_family.members]


def test_weight_coefficient():
    assert WeightVector.flat(5).coefficient == pytest.approx(5)
    assert WeightVector.of([1, 2, 3]).coefficient == pytest.approx(36 / 14)
    with pytest.raises(WelchInputError):
        WeightVector.of([1, 0])
    with pytest.raises(WelchInputError):
        WeightVector.of([1, np.inf])


def test_flat_square_bound_value():
    assert flat_square_bound(4, 2) == pytest.approx(4 / 3)


def test_rescaled_sic_attains_all_bounds(unit_sic):
    gram = np.array([[tr(a, b) for b in unit_sic] for a in unit_sic])
    assert np.allclose(gram, np.eye(4) + (1 - np.eye(4)) / 3, atol=1e-12)
    w = weighted_welch(unit_sic)
    h = holder_welch(unit_sic, None, 2.0)
    m = min_angle_bound(unit_sic)
    for rep in (w, h, m):
        assert abs(rep.slack) <= 1e-9 and rep.equality
    assert h.rhs == pytest.approx(4 / 3, abs=1e-12)
    assert h.lhs == pytest.approx(4 / 3, abs=1e-12)
    assert m.rhs == pytest.approx(1 / 3)
    s = simplex_bound(unit_sic)
    assert abs(s.slack) <= 1e-12 and s.equality


def test_simplex_bound_matches_direct_formula(rng):
    ms = [random_psd_unit(3, rng) for _ in range(5)]
    rep = simplex_bound(ms)
    total = sum(np.trace(m).real for m in ms)
    direct = (total**2 / 3 - sum(tr(m, m) for m in ms)) / 20
    assert rep.rhs == pytest.approx(direct)
    assert rep.lhs == pytest.approx(max(tr(a, b) for i, a in enumerate(ms) for j, b in enumerate(ms) if i != j))
    assert rep.holds()


def test_two_bases_counterexample_weighted_equality_without_equiangularity():
    """Two orthonormal bases: weighted equality holds, Hölder p=2 is strict."""
    zs = [np.diag([1.0, 0.0]), np.diag([0.0, 1.0])]
    xs = [(I2 + SX) / 2, (I2 - SX) / 2]
    ms = [m.astype(complex) for m in zs + xs]
    w = weighted_welch(ms)
    assert w.equality and abs(w.slack) <= 1e-12
    h = holder_welch(ms, None, 2.0)
    assert not h.equality and h.slack > 0.1
    assert h.equiangular_dev == pytest.approx(0.5)


def test_input_validation():
    with pytest.raises(WelchInputError, match="Tr"):
        weighted_welch([2 * np.diag([1.0, 0.0]), np.diag([0.0, 1.0])])
    rep = weighted_welch([2 * np.diag([1.0, 0.0]), np.diag([0.0, 1.0])], auto_normalize=True)
    assert rep.holds()
    with pytest.raises(WelchInputError, match="positive"):
        weighted_welch([SZ / np.sqrt(2), I2 / np.sqrt(2)])
    with pytest.raises(WelchInputError, match="p must"):
        holder_welch([I2 / np.sqrt(2)] * 2, None, 1.0)
    with pytest.raises(WelchInputError, match="weights"):
        weighted_welch([I2 / np.sqrt(2)] * 2, [1.0])
    # [v] = 1 + tiny < d = 2
    with pytest.raises(WelchInputError, match="coefficient"):
        holder_welch([I2 / np.sqrt(2)] * 3, [1.0, 1e-3, 1e-3])
    with pytest.raises(WelchInputError):
        simplex_bound([I2])


@st.composite
def families(draw):
    d = draw(st.integers(1, 4))
    n = draw(st.integers(2, 10))
    rng = np.random.default_rng(draw(st.integers(0, 2**31 - 1)))
    ms = [random_psd_unit(d, rng) for _ in range(n)]
    return d, n, ms, rng


def _admissible_weights(d, n, rng):
    """Positive weights with [v] >= d (requires n >= d)."""
    for _ in range(50):
        v = rng.uniform(0.2, 1.0, n)
        if v.sum() ** 2 / (v @ v) >= d:
            return v
    return np.ones(n)


@settings(max_examples=100, deadline=None)
@given(families())
def test_welch_inequalities_hold(case):
    d, n, ms, rng = case
    v = rng.uniform(0.05, 3.0, n)
    assert weighted_welch(ms, v).slack >= -1e-9
    assert simplex_bound(ms).slack >= -1e-9
    if n >= d:
        va = _admissible_weights(d, n, rng)
        p = float(rng.uniform(1.1, 4.0))
        assert holder_welch(ms, va, p).slack >= -1e-9
        m = min_angle_bound(ms, va)
        assert m.slack >= -1e-9 and m.extra["flat_dominates"]


@settings(max_examples=50, deadline=None)
@given(families())
def test_equiangular_weighted_equality_propagates(case):
    """Weighted equality plus equiangularity gives Hölder equality for every p."""
    d, n, ms, rng = case
    w = weighted_welch(ms)
    if w.equality and w.equiangular_dev <= 1e-8:
        for p in (1.5, 2.0, 3.0):
            assert abs(holder_welch(ms, None, p).slack) <= 1e-8


@pytest.mark.parametrize("p", [1.5, 2.0, 3.0, 5.0])
def test_sic_equality_for_every_p(unit_sic, p):
    rep = holder_welch(unit_sic, None, p)
    assert rep.equality and abs(rep.slack) <= 1e-9
