"""Rate-energy regions of practical SWIPT receivers on a deterministic SIMO link.

Conventions used throughout the package:

* ``rho`` is the fraction of received power sent to the *information* branch.
* ``tau`` is the fraction of time spent *harvesting*.
* Antenna noise (``sigma_n2``) passes through the power splitter; conversion
  noise (``sigma_c2``) is added after it. Noise power is never harvested.
* Information branches combine antennas by maximum-ratio combining.
"""
import itertools
from dataclasses import dataclass, field

import numpy as np

from .curves import RateEnergyCurve, RateEnergyPoint
from .errors import DomainError, UnsupportedError
from .rectenna import RectennaModel, harvest_dc


@dataclass(frozen=True)
class SimoChannel:
    gains: tuple
    power: float = 1.0
    sigma_n2: float = 0.5
    sigma_c2: float = 0.5
    harvester: RectennaModel = field(default_factory=RectennaModel.linear)

    def __post_init__(self):
        g = np.asarray(self.gains, dtype=float)
        if g.ndim != 1 or g.size < 1:
            raise DomainError("need at least one antenna gain")
        if np.any(~np.isfinite(g)) or np.any(g < 0):
            raise DomainError("channel power gains must be finite and >= 0")
        if not np.any(g > 0):
            raise DomainError("at least one antenna gain must be positive")
        if not self.power >= 0:
            raise DomainError(f"transmit power must be >= 0, got {self.power}")
        if not (self.sigma_n2 > 0 and self.sigma_c2 > 0):
            raise DomainError("noise variances must be > 0")
        object.__setattr__(self, "gains", tuple(float(v) for v in g))

    @property
    def g(self):
        return np.array(self.gains)

    @property
    def received_power(self):
        return self.power * self.g.sum()


# The 1x2 example link: |h1|^2 = |h2|^2 = 1/2, P = 1 W, both noises 1/2.
REFERENCE_CHANNEL = SimoChannel(gains=(0.5, 0.5), power=1.0, sigma_n2=0.5, sigma_c2=0.5)


def _check_fractions(grid, name):
    grid = np.asarray(grid, dtype=float)
    if grid.ndim != 1:
        raise DomainError(f"{name} grid must be one-dimensional")
    if np.any(np.isnan(grid)) or np.any(grid < 0) or np.any(grid > 1):
        raise DomainError(f"{name} values must lie in [0, 1]")
    return grid


def _mrc_rate(channel, gain_sum):
    return np.log2(1.0 + channel.power * gain_sum / (channel.sigma_n2 + channel.sigma_c2))


def ts_region(channel, tau_grid):
    """Time switching: harvest for a fraction ``tau`` of each block."""
    tau = _check_fractions(tau_grid, "tau")
    rate = (1.0 - tau) * _mrc_rate(channel, channel.g.sum())
    energy = tau * harvest_dc(channel.harvester, channel.received_power)
    return RateEnergyCurve("TS", tau, rate, energy)


def ps_region(channel, rho_grid):
    """Power splitting with the same factor ``rho`` on every antenna."""
    rho = _check_fractions(rho_grid, "rho")
    r = rho[:, None]
    snr = (r * channel.power * channel.g) / (r * channel.sigma_n2 + channel.sigma_c2)
    rate = np.log2(1.0 + snr.sum(axis=1))
    energy = np.asarray(harvest_dc(channel.harvester, (1.0 - rho) * channel.received_power), dtype=float)
    return RateEnergyCurve("PS", rho, rate, energy)


def as_points(channel):
    """Antenna switching: one point per split of the antennas into two groups.

    Labels read ``"info|energy"`` with 1-based antenna indices. Partitions
    giving the same (rate, energy) pair are reported once.
    """
    g = channel.g
    m = g.size
    if m < 2:
        raise UnsupportedError("antenna switching needs at least two antennas")

    labels, rates, energies = [], [], []
    for size in range(1, m):
        for info in itertools.combinations(range(m), size):
            mask = np.zeros(m, dtype=bool)
            mask[list(info)] = True
            rate = float(_mrc_rate(channel, g[mask].sum()))
            energy = float(harvest_dc(channel.harvester, channel.power * g[~mask].sum()))
            if any(np.isclose(rate, r, rtol=0, atol=1e-12) and np.isclose(energy, e, rtol=0, atol=1e-12)
                   for r, e in zip(rates, energies)):
                continue
            label = ",".join(str(i + 1) for i in np.flatnonzero(mask)) + "|" + \
                ",".join(str(i + 1) for i in np.flatnonzero(~mask))
            labels.append(label)
            rates.append(rate)
            energies.append(energy)
    return RateEnergyCurve("AS", np.array(labels), np.array(rates), np.array(energies))


def outer_bound(channel):
    """Corner of the no-trade-off rectangle, valid for a linear harvester only."""
    if channel.harvester.variant != "linear":
        raise UnsupportedError("the rectangular outer bound only holds for the linear harvester")
    rate = float(_mrc_rate(channel, channel.g.sum()))
    return RateEnergyPoint(rate, float(harvest_dc(channel.harvester, channel.received_power)))
