"""Multitone energy waveforms and their overlay on an information signal.

Time is measured in fundamental periods: tone ``k`` is ``cos(2*pi*k*t + phi)``
with integer ``k``, so any whole number of periods holds an integer number of
cycles of every tone. Information subcarriers use the same grid. One
information symbol lasts exactly one fundamental period, so each symbol
period can be demodulated with a DFT and no leakage between subcarriers.
"""
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .rectenna import RectennaModel, harvest_dc_waveform

MIN_OVERSAMPLING = 8


@dataclass(frozen=True)
class MultitoneWaveform:
    """Sum of cosines on integer subcarrier indices.

    Amplitudes default to ``sqrt(2P/N)`` each, so the tones share the total
    power ``power`` equally. Indices default to ``1..N`` and phases to zero.
    """

    n_tones: int
    power: float = 1.0
    indices: tuple = None
    phases: tuple = None
    amplitudes: tuple = None

    def __post_init__(self):
        n = self.n_tones
        if int(n) != n or n < 1:
            raise DomainError(f"need at least one tone, got {n}")
        if not self.power >= 0:
            raise DomainError(f"power must be >= 0, got {self.power}")
        idx = np.arange(1, n + 1) if self.indices is None else np.asarray(self.indices)
        if idx.shape != (n,) or np.any(idx != np.round(idx)) or np.any(idx < 1):
            raise DomainError("tone indices must be N positive integers")
        if np.unique(idx).size != n:
            raise DomainError("tone indices must be distinct")
        phases = np.zeros(n) if self.phases is None else np.asarray(self.phases, dtype=float)
        if phases.shape != (n,):
            raise DomainError("need one phase per tone")
        if self.amplitudes is None:
            amps = np.full(n, math.sqrt(2.0 * self.power / n))
        else:
            amps = np.asarray(self.amplitudes, dtype=float)
            if amps.shape != (n,) or np.any(amps < 0):
                raise DomainError("need one nonnegative amplitude per tone")
            if not math.isclose(0.5 * float(amps @ amps), self.power, rel_tol=1e-12, abs_tol=1e-15):
                raise DomainError("tone powers must add up to the configured total power")
        object.__setattr__(self, "indices", tuple(int(k) for k in idx))
        object.__setattr__(self, "phases", tuple(float(v) for v in phases))
        object.__setattr__(self, "amplitudes", tuple(float(v) for v in amps))

    @property
    def max_index(self):
        return max(self.indices)

    def tones(self):
        return np.array(self.indices), np.array(self.amplitudes), np.array(self.phases)


def qpsk(shape, rng=None):
    """Unit-energy quaternary phase symbols."""
    rng = np.random.default_rng(rng)
    bits = rng.integers(0, 2, size=(2,) + tuple(np.atleast_1d(shape)))
    return ((1 - 2 * bits[0]) + 1j * (1 - 2 * bits[1])) / math.sqrt(2)


@dataclass(frozen=True)
class CompositeSignal:
    """Information subcarriers plus energy tones on a disjoint set of indices.

    ``symbols`` has one row per symbol period and one column per entry of
    ``info_indices``. ``info_power`` is the average power of each information
    subcarrier; the constellation is assumed unit-energy.
    """

    info_indices: tuple
    symbols: np.ndarray
    energy: MultitoneWaveform = None
    info_power: float = 1.0
    samples_per_symbol: int = 64

    def __post_init__(self):
        info = np.asarray(self.info_indices)
        if info.ndim != 1 or info.size < 1 or np.any(info < 1) or np.any(info != np.round(info)):
            raise DomainError("information indices must be positive integers")
        if np.unique(info).size != info.size:
            raise DomainError("information indices must be distinct")
        symbols = np.atleast_2d(np.asarray(self.symbols, dtype=complex))
        if symbols.shape[1] != info.size:
            raise DomainError("need one symbol column per information subcarrier")
        if not self.info_power > 0:
            raise DomainError("info_power must be > 0")
        if self.energy is not None and set(self.energy.indices) & set(info.tolist()):
            raise DomainError("information and energy subcarriers overlap")
        top = max(info.max(), self.energy.max_index if self.energy is not None else 0)
        if self.samples_per_symbol < MIN_OVERSAMPLING * top:
            raise DomainError(
                f"samples_per_symbol={self.samples_per_symbol} is below "
                f"{MIN_OVERSAMPLING} x highest subcarrier index {top}"
            )
        object.__setattr__(self, "info_indices", tuple(int(k) for k in info))
        object.__setattr__(self, "symbols", symbols)

    @property
    def n_symbols(self):
        return self.symbols.shape[0]

    def information_only(self):
        return CompositeSignal(self.info_indices, self.symbols, None, self.info_power, self.samples_per_symbol)


def _render_tones(waveform, t):
    k, amp, phi = waveform.tones()
    return (amp[:, None] * np.cos(2 * np.pi * k[:, None] * t[None, :] + phi[:, None])).sum(axis=0)


def synthesize(signal, n_samples=None, n_periods=1):
    """Real samples of a multitone waveform or a composite signal.

    A multitone waveform is rendered over ``n_periods`` whole fundamental
    periods. A composite signal always spans its ``n_symbols`` periods at
    ``samples_per_symbol`` samples each.
    """
    if isinstance(signal, CompositeSignal):
        return _synthesize_composite(signal, n_samples)

    if int(n_periods) != n_periods or n_periods < 1:
        raise DomainError(f"n_periods must be a positive integer, got {n_periods}")
    if n_samples is None:
        n_samples = 2 * MIN_OVERSAMPLING * signal.max_index * int(n_periods)
    if int(n_samples) != n_samples or n_samples < MIN_OVERSAMPLING * signal.max_index * n_periods:
        raise DomainError(
            f"{n_samples} samples over {n_periods} period(s) is below "
            f"{MIN_OVERSAMPLING} x the highest tone index {signal.max_index}"
        )
    t = n_periods * np.arange(int(n_samples)) / int(n_samples)
    return _render_tones(signal, t)


def _synthesize_composite(signal, n_samples):
    L = signal.samples_per_symbol
    total = signal.n_symbols * L
    if n_samples is not None and n_samples != total:
        raise DomainError(f"a composite signal spans {total} samples, got n_samples={n_samples}")
    t = np.arange(L) / L
    k = np.array(signal.info_indices)
    carriers = np.exp(2j * np.pi * k[:, None] * t[None, :])
    scale = math.sqrt(2.0 * signal.info_power)
    info = scale * (signal.symbols @ carriers).real
    if signal.energy is not None:
        info = info + _render_tones(signal.energy, t)[None, :]
    return info.ravel()


def papr(waveform, oversample=64):
    """Peak-to-average power ratio of a multitone waveform.

    Equal-amplitude, zero-phase tones peak coherently at t = 0, giving exactly
    2N. Anything else is evaluated on a dense grid over one period (a lower
    bound on the true continuous-time peak).
    """
    _, amp, phi = waveform.tones()
    if waveform.power == 0:
        return math.nan
    if np.all(phi == 0) and np.all(amp == amp[0]):
        return 2.0 * waveform.n_tones
    y = synthesize(waveform, n_samples=max(oversample, MIN_OVERSAMPLING) * waveform.max_index)
    y2 = y * y
    return float(y2.max() / y2.mean())


def harvest_multitone(waveform, diode=None, n_samples=None):
    """Diode-model DC output for a multitone waveform (one period)."""
    diode = RectennaModel.diode() if diode is None else diode
    return harvest_dc_waveform(diode, synthesize(waveform, n_samples))


def demodulate(signal, samples):
    """Recover information symbols from samples of ``signal``'s layout."""
    L = signal.samples_per_symbol
    frames = np.asarray(samples, dtype=float).reshape(signal.n_symbols, L)
    spectrum = np.fft.fft(frames, axis=1) / L
    k = np.array(signal.info_indices)
    return spectrum[:, k] * 2.0 / math.sqrt(2.0 * signal.info_power)


@dataclass(frozen=True)
class IntegrityReport:
    max_symbol_error: float
    harvested: float
    harvested_info_only: float


def info_integrity_check(signal, diode=None):
    """Compare symbols demodulated with and without the energy tones.

    ``max_symbol_error`` is the largest magnitude difference between the two
    symbol sets; ``harvested`` is the diode output on the composite signal.
    """
    if signal.energy is not None and set(signal.energy.indices) & set(signal.info_indices):
        raise DomainError("information and energy subcarriers overlap")
    diode = RectennaModel.diode() if diode is None else diode
    plain = signal.information_only()
    y_comp = synthesize(signal)
    y_info = synthesize(plain)
    err = np.abs(demodulate(signal, y_comp) - demodulate(plain, y_info)).max()
    return IntegrityReport(
        max_symbol_error=float(err),
        harvested=harvest_dc_waveform(diode, y_comp),
        harvested_info_only=harvest_dc_waveform(diode, y_info),
    )
