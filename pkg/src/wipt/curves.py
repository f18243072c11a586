"""Rate-energy tuples and sampled region boundaries."""
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np


class RateEnergyPoint(NamedTuple):
    rate: float
    energy: float


@dataclass
class RateEnergyCurve:
    """A sampled boundary: one (rate, energy) pair per parameter value.

    ``parameter`` holds whatever the scheme sweeps (time fraction, splitting
    factor, energy rate, partition label). ``extra`` carries per-point data a
    scheme wants to keep, e.g. optimal input distributions.
    """

    scheme: str
    parameter: np.ndarray
    rate: np.ndarray
    energy: np.ndarray
    extra: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.rate)

    def points(self):
        return [RateEnergyPoint(float(r), float(e)) for r, e in zip(self.rate, self.energy)]

    def rate_at_energy(self, energy):
        """Linearly interpolated rate at the given energy level(s)."""
        order = np.argsort(self.energy, kind="stable")
        return np.interp(energy, self.energy[order], self.rate[order])
