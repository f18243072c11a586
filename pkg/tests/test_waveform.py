import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from wipt import CompositeSignal, DomainError, MultitoneWaveform, RectennaModel, harvest_multitone, info_integrity_check, papr, synthesize
from wipt.waveform import demodulate, qpsk

DIODE = RectennaModel.diode(1.0, 1.0)


def test_single_tone_samples():
    y = synthesize(MultitoneWaveform(1, power=1.0), n_samples=64)
    t = np.arange(64) / 64
    np.testing.assert_allclose(y, math.sqrt(2) * np.cos(2 * np.pi * t), atol=1e-15)
    assert np.mean(y ** 2) == pytest.approx(1.0, rel=1e-12)


def test_coherent_peak_four_tones():
    y = synthesize(MultitoneWaveform(4, power=1.0), n_samples=256)
    assert y.max() ** 2 / np.mean(y ** 2) == pytest.approx(8.0, rel=1e-12)


@pytest.mark.parametrize("n_samples,n_periods", [(63, 1), (100, 1.5), (64, 0)])
def test_bad_sampling_rejected(n_samples, n_periods):
    with pytest.raises(DomainError):
        synthesize(MultitoneWaveform(8), n_samples=n_samples, n_periods=n_periods)


def test_waveform_validation():
    with pytest.raises(DomainError):
        MultitoneWaveform(0)
    with pytest.raises(DomainError):
        MultitoneWaveform(2, indices=(3, 3))
    with pytest.raises(DomainError):
        MultitoneWaveform(2, power=1.0, amplitudes=(1.0, 1.0, 1.0))
    with pytest.raises(DomainError):
        MultitoneWaveform(2, power=1.0, amplitudes=(1.0, 0.5))
    w = MultitoneWaveform(2, power=1.25, amplitudes=(1.0, 1.5 ** 0.5))
    assert sum(a * a / 2 for a in w.amplitudes) == pytest.approx(1.25, rel=1e-12)


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 16), st.floats(1e-3, 1e3), st.integers(0, 2 ** 32 - 1), st.integers(1, 3))
def test_power_conservation(n, p, seed, periods):
    phases = np.random.default_rng(seed).uniform(0, 2 * np.pi, n)
    w = MultitoneWaveform(n, power=p, phases=phases)
    y = synthesize(w, n_periods=periods)
    assert np.mean(y ** 2) == pytest.approx(p, rel=1e-9)


def test_papr_values():
    assert papr(MultitoneWaveform(1)) == 2.0
    assert papr(MultitoneWaveform(4)) == 8.0
    # numeric route sees the same coherent peak at t = 0
    y = synthesize(MultitoneWaveform(4), n_samples=1024)
    assert (y ** 2).max() / (y ** 2).mean() == pytest.approx(8.0, abs=1e-9)


def test_papr_random_phases_bounded():
    rng = np.random.default_rng(5)
    zero = papr(MultitoneWaveform(4))
    for _ in range(100):
        w = MultitoneWaveform(4, phases=rng.uniform(0, 2 * np.pi, 4))
        assert papr(w) <= zero + 1e-12


def test_papr_unequal_amplitudes_numeric():
    w = MultitoneWaveform(2, power=1.0, amplitudes=(math.sqrt(1.5), math.sqrt(0.5)))
    # zero phases still peak at t=0: (a1 + a2)^2 / P
    assert papr(w) == pytest.approx((math.sqrt(1.5) + math.sqrt(0.5)) ** 2, rel=1e-12)


def test_harvest_without_fourth_order_is_power():
    for n in (1, 2, 4, 8):
        assert harvest_multitone(MultitoneWaveform(n, power=0.3), RectennaModel.diode(2.0, 0.0)) == pytest.approx(0.6)


def test_harvest_increases_with_tone_count():
    values = []
    for n in (1, 2, 4, 8):
        w = MultitoneWaveform(n)
        a = harvest_multitone(w, DIODE, n_samples=16 * n)
        b = harvest_multitone(w, DIODE, n_samples=37 * n)
        assert a == pytest.approx(b, abs=1e-9)
        values.append(a)
    assert all(x < y for x, y in zip(values, values[1:]))


def test_single_tone_matches_rectenna_example():
    assert harvest_multitone(MultitoneWaveform(1), DIODE) == pytest.approx(2.5, abs=1e-12)


def _composite(energy, seed=0, n_info=4, symbols=8, sps=64):
    return CompositeSignal(tuple(range(1, 2 * n_info, 2)), qpsk((symbols, n_info), seed), energy, 0.25, sps)


def test_composite_without_energy_equals_information_only():
    c = _composite(None)
    np.testing.assert_array_equal(synthesize(c), synthesize(c.information_only()))


def test_composite_demodulates_exactly():
    c = _composite(MultitoneWaveform(4, indices=(2, 4, 6, 8)))
    np.testing.assert_allclose(demodulate(c, synthesize(c)), c.symbols, atol=1e-12)


def test_integrity_report():
    c = _composite(MultitoneWaveform(4, indices=(2, 4, 6, 8)))
    rep = info_integrity_check(c, DIODE)
    assert rep.max_symbol_error <= 1e-9
    assert rep.harvested > rep.harvested_info_only


def test_zero_power_tones_harvest_nothing_extra():
    c = _composite(MultitoneWaveform(3, power=0.0, indices=(2, 4, 6)))
    rep = info_integrity_check(c, DIODE)
    assert rep.harvested == rep.harvested_info_only


def test_overlap_rejected():
    with pytest.raises(DomainError):
        _composite(MultitoneWaveform(2, indices=(2, 3)))


def test_composite_sample_count_fixed():
    c = _composite(None)
    with pytest.raises(DomainError):
        synthesize(c, n_samples=10)
    assert synthesize(c, n_samples=8 * 64).size == 8 * 64


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2 ** 32 - 1))
def test_orthogonality_for_random_layouts(seed):
    rng = np.random.default_rng(seed)
    idx = rng.permutation(np.arange(1, 17))
    n_info = int(rng.integers(1, 8))
    n_energy = int(rng.integers(1, 8))
    info, energy = idx[:n_info], idx[n_info:n_info + n_energy]
    w = MultitoneWaveform(n_energy, power=float(rng.uniform(0, 5)), indices=tuple(energy),
                          phases=rng.uniform(0, 2 * np.pi, n_energy))
    c = CompositeSignal(tuple(info), qpsk((4, n_info), rng), w, float(rng.uniform(0.1, 2)), 128)
    assert info_integrity_check(c, DIODE).max_symbol_error <= 1e-9
