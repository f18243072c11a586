import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from wipt import EnergyAlphabet, InfeasibleEnergyError, binary_capacity, max_entropy_capacity, region_boundary
from wipt.capacity import BINARY, binary_entropy, entropy_bits, grid_search_capacity
from wipt.errors import DomainError


def test_no_tradeoff_below_half():
    pt = binary_capacity(0.25)
    assert pt.capacity == 1.0
    np.testing.assert_array_equal(pt.distribution, [0.5, 0.5])


def test_deterministic_at_full_energy():
    assert binary_capacity(1.0).capacity == 0.0


def test_tradeoff_regime_value():
    # brute force over Bernoulli(p) with p*1 >= b
    p = np.arange(0, 1 + 1e-12, 1e-5)
    h = np.array([binary_entropy(v) for v in p[p >= 0.75]])
    assert binary_capacity(0.75).capacity == pytest.approx(h.max(), abs=1e-6)
    assert binary_capacity(0.75).capacity == pytest.approx(0.8113, abs=1e-4)
    np.testing.assert_allclose(binary_capacity(0.75).distribution, [0.25, 0.75])


def test_continuity_at_half():
    assert binary_capacity(0.5).capacity == 1.0
    assert binary_entropy(0.5) == 1.0
    assert binary_capacity(0.5 + 1e-12).capacity == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("b", [-0.01, 1.01, math.nan])
def test_binary_infeasible(b):
    with pytest.raises(InfeasibleEnergyError):
        binary_capacity(b)


def test_k_ary_matches_binary_closed_form():
    assert max_entropy_capacity(BINARY, 0.75).capacity == pytest.approx(binary_capacity(0.75).capacity, abs=1e-12)


def test_ternary_uniform_and_point_mass():
    alph = EnergyAlphabet((0.0, 1.0, 2.0))
    assert max_entropy_capacity(alph, 1.0).capacity == pytest.approx(math.log2(3))
    top = max_entropy_capacity(alph, 2.0)
    assert top.capacity == 0.0
    np.testing.assert_array_equal(top.distribution, [0, 0, 1])


def test_below_min_energy_is_unconstrained():
    alph = EnergyAlphabet((1.0, 2.0, 4.0))
    assert max_entropy_capacity(alph, 0.0).capacity == pytest.approx(math.log2(3))


def test_above_max_energy_rejected():
    with pytest.raises(InfeasibleEnergyError):
        max_entropy_capacity(EnergyAlphabet((0.0, 1.0, 2.0)), 2.5)


def test_alphabet_validation():
    with pytest.raises(DomainError):
        EnergyAlphabet((1.0,))
    with pytest.raises(DomainError):
        EnergyAlphabet((1.0, 1.0))
    with pytest.raises(DomainError):
        EnergyAlphabet((0.0, -1.0))


def test_region_endpoints():
    curve = region_boundary(BINARY, [0.0, 0.5, 1.0])
    np.testing.assert_array_equal(curve.rate, [1.0, 1.0, 0.0])
    np.testing.assert_array_equal(curve.energy, [0.0, 0.5, 1.0])


def test_region_strictly_decreasing_in_tradeoff_regime():
    curve = region_boundary(BINARY, [0.6, 0.9])
    assert curve.rate[1] < curve.rate[0]


def test_region_single_point_at_min_energy():
    alph = EnergyAlphabet((0.5, 1.0, 3.0, 7.0))
    curve = region_boundary(alph, [0.5])
    assert curve.rate[0] == pytest.approx(2.0)


def test_region_rejects_unsorted():
    with pytest.raises(DomainError):
        region_boundary(BINARY, [0.5, 0.1])


def test_entropy_convention():
    assert entropy_bits([1.0, 0.0]) == 0.0
    assert entropy_bits([0.25] * 4) == pytest.approx(2.0)


alphabets = st.lists(st.floats(0, 5), min_size=2, max_size=4).filter(lambda e: max(e) - min(e) > 0.1)


@settings(max_examples=60, deadline=None)
@given(alphabets, st.floats(0, 1))
def test_gibbs_properties(energies, frac):
    alph = EnergyAlphabet(tuple(energies))
    e = alph.energies
    b = e.min() + frac * (e.max() - e.min())
    pt = max_entropy_capacity(alph, b)
    assert pt.capacity >= 0
    assert abs(pt.distribution.sum() - 1) <= 1e-12
    assert pt.distribution @ e >= b - 1e-12
    if e.mean() < b < e.max():
        assert abs(pt.distribution @ e - b) <= 1e-9


@settings(max_examples=30, deadline=None)
@given(alphabets)
def test_boundary_nonincreasing(energies):
    alph = EnergyAlphabet(tuple(energies))
    e = alph.energies
    grid = np.linspace(e.min(), e.max(), 25)
    rates = region_boundary(alph, grid).rate
    assert np.all(np.diff(rates) <= 1e-12)


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_matches_simplex_grid_search_ternary(seed):
    rng = np.random.default_rng(seed)
    e = np.sort(rng.uniform(0, 3, 3))
    alph = EnergyAlphabet(tuple(e))
    b = float(rng.uniform(e.mean(), e.max()))
    got = max_entropy_capacity(alph, b).capacity
    assert got == pytest.approx(grid_search_capacity(alph, b, step=1e-3), abs=1e-3)


def test_matches_simplex_grid_search_quaternary():
    alph = EnergyAlphabet((0.0, 0.3, 1.0, 2.5))
    got = max_entropy_capacity(alph, 1.7).capacity
    assert got == pytest.approx(grid_search_capacity(alph, 1.7, step=1e-3), abs=1e-3)
