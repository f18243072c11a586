"""Information-energy capacity of discrete noiseless channels.

Each input symbol carries a fixed amount of energy (epcu). The receiver needs
an average energy rate of at least ``b``; the channel is noiseless, so the
capacity is the largest input entropy meeting that constraint.
"""
import math
from dataclasses import dataclass

import numpy as np
from scipy import optimize

from .curves import RateEnergyCurve
from .errors import ConvergenceError, DomainError, InfeasibleEnergyError


@dataclass(frozen=True)
class EnergyAlphabet:
    symbol_energies: tuple

    def __post_init__(self):
        e = np.asarray(self.symbol_energies, dtype=float)
        if e.ndim != 1 or e.size < 2:
            raise DomainError("an alphabet needs at least two symbols")
        if np.any(~np.isfinite(e)) or np.any(e < 0):
            raise DomainError("symbol energies must be finite and >= 0")
        if np.ptp(e) == 0:
            raise DomainError("symbol energies must not all be equal")
        object.__setattr__(self, "symbol_energies", tuple(float(v) for v in e))

    @property
    def energies(self):
        return np.array(self.symbol_energies)

    def __len__(self):
        return len(self.symbol_energies)


BINARY = EnergyAlphabet((0.0, 1.0))


@dataclass(frozen=True)
class CapacityPoint:
    b: float
    capacity: float
    distribution: np.ndarray

    def energy(self, alphabet):
        return float(self.distribution @ alphabet.energies)


def entropy_bits(p):
    """Shannon entropy in bits with 0 log 0 = 0."""
    p = np.asarray(p, dtype=float)
    nz = p[p > 0]
    return float(max(0.0, -(nz * np.log2(nz)).sum()))


def binary_entropy(b):
    if b <= 0 or b >= 1:
        return 0.0
    return -b * math.log2(b) - (1 - b) * math.log2(1 - b)


def binary_capacity(b):
    """On-off keying with energies {0, 1}: capacity under energy rate ``b``."""
    if not 0 <= b <= 1:
        raise InfeasibleEnergyError(f"energy rate b must lie in [0, 1] epcu, got {b}")
    if b <= 0.5:
        return CapacityPoint(b, 1.0, np.array([0.5, 0.5]))
    return CapacityPoint(b, binary_entropy(b), np.array([1.0 - b, b]))


def _gibbs(e, beta):
    z = beta * (e - e.max())
    w = np.exp(z)
    return w / w.sum()


def max_entropy_capacity(alphabet, b, tol=1e-13):
    """Maximum-entropy input law with mean energy >= ``b``.

    Uniform if it already meets the constraint; otherwise the Gibbs tilt
    p_i ~ exp(beta * e_i) with beta > 0 chosen so the mean energy equals b.
    Requests below the smallest symbol energy are treated as unconstrained.
    """
    e = alphabet.energies
    e_max = e.max()
    if b > e_max or math.isnan(b):
        raise InfeasibleEnergyError(f"energy rate {b} exceeds the largest symbol energy {e_max}")

    uniform = np.full(e.size, 1.0 / e.size)
    if uniform @ e >= b:
        return CapacityPoint(b, math.log2(e.size), uniform)

    top = e == e_max
    if b == e_max:
        p = top / top.sum()
        return CapacityPoint(b, entropy_bits(p), p)

    excess = lambda beta: _gibbs(e, beta) @ e - b
    hi = 1.0
    for _ in range(200):
        if excess(hi) >= 0:
            break
        hi *= 2.0
    else:
        raise ConvergenceError("could not bracket the Gibbs parameter", residuals=(excess(hi),))
    beta = optimize.brentq(excess, 0.0, hi, xtol=tol, rtol=4 * np.finfo(float).eps, maxiter=500)
    p = _gibbs(e, beta)
    # brentq may land a hair below b; step to the feasible side of the bracket
    if p @ e < b:
        p = _gibbs(e, beta + tol)
    return CapacityPoint(b, entropy_bits(p), p)


def region_boundary(alphabet, b_grid):
    """Capacity-region boundary sampled at each energy rate in ``b_grid``.

    ``rate`` holds the capacities (bpcu) and ``energy`` the energy rates;
    the optimal input laws are in ``extra["distribution"]``, one row per b.
    """
    b_grid = np.asarray(b_grid, dtype=float)
    if np.any(np.diff(b_grid) < 0):
        raise DomainError("b_grid must be sorted ascending")
    solve = binary_capacity if alphabet == BINARY else (lambda b: max_entropy_capacity(alphabet, b))
    points = [solve(float(b)) for b in b_grid]
    return RateEnergyCurve(
        "capacity", b_grid,
        rate=np.array([pt.capacity for pt in points]),
        energy=b_grid.copy(),
        extra={"distribution": np.array([pt.distribution for pt in points]).reshape(len(points), -1)},
    )


def grid_search_capacity(alphabet, b, step=1e-3):
    """Exhaustive search over a lattice on the probability simplex.

    Slow reference implementation used to check :func:`max_entropy_capacity`.
    """
    e = alphabet.energies
    k = e.size
    n = int(round(1.0 / step))
    best = -np.inf
    levels = np.arange(n + 1)
    if k == 2:
        p1 = levels / n
        probs = np.stack([1 - p1, p1], axis=1)
        best = _best_feasible(probs, e, b)
    elif k == 3:
        i, j = np.meshgrid(levels, levels, indexing="ij")
        mask = i + j <= n
        probs = np.stack([i[mask], j[mask], n - i[mask] - j[mask]], axis=1) / n
        best = _best_feasible(probs, e, b)
    elif k == 4:
        i, j = np.meshgrid(levels, levels, indexing="ij")
        for m in range(n + 1):
            mask = i + j <= n - m
            probs = np.stack([i[mask], j[mask], np.full(mask.sum(), m), n - m - i[mask] - j[mask]], axis=1) / n
            best = max(best, _best_feasible(probs, e, b))
    else:
        raise DomainError("grid search supports alphabets with 2 to 4 symbols")
    return best


def _best_feasible(probs, e, b):
    feasible = probs @ e >= b - 1e-12
    if not feasible.any():
        return -np.inf
    p = probs[feasible]
    with np.errstate(divide="ignore", invalid="ignore"):
        h = -np.where(p > 0, p * np.log2(p), 0.0).sum(axis=1)
    return float(h.max())
