"""Monte Carlo engine for a bipolar Poisson SWIPT network with SIC.

The typical receiver sits at the origin and its own transmitter is at
distance ``distance``. Interferers form a PPP of density ``density`` on the
annulus ``[r0, sim_radius]``. All links see unit-mean Rayleigh power fading
and path loss ``r**-alpha``. Receivers power-split with information fraction
``rho``. SIC removes the strongest interferer from the information branch
only; harvesting always collects the full received power.

Randomness is organized in blocks of ``BLOCK_SIZE`` realizations. Block ``k``
draws from ``SeedSequence(seed, spawn_key=(k,))``, so a realization depends only
on the seed and its global index, never on how blocks are spread over workers.
Per-realization statistics are computed at unit transmit power; powers and
splitting factors are applied afterwards, which gives common random numbers
across every sweep point.
"""
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

import numpy as np
from scipy.special import gamma

from .errors import ConvergenceError, DomainError, UnsupportedError

BLOCK_SIZE = 2000
TRUNCATION_TOL = 1e-3
Z95 = 1.959963984540054


@dataclass(frozen=True)
class NetworkConfig:
    density: float = 1e-3
    distance: float = 10.0
    power: float = 1.0
    alpha: float = 4.0
    rho: float = 0.5
    theta: float = 1.0
    sigma_n2: float = 0.1
    sigma_c2: float = 0.1
    eta: float = 1.0
    sic: bool = False
    sim_radius: float = 300.0
    r0: float = 1.0
    n_realizations: int = 100_000
    seed: int = 0
    workers: int = 1

    def __post_init__(self):
        if not self.density >= 0:
            raise DomainError(f"density must be >= 0, got {self.density}")
        for name in ("distance", "power", "sim_radius"):
            if not getattr(self, name) > 0:
                raise DomainError(f"{name} must be > 0, got {getattr(self, name)}")
        if not self.alpha > 2:
            raise DomainError(f"path-loss exponent must exceed 2, got {self.alpha}")
        if not 0 <= self.rho <= 1:
            raise DomainError(f"rho must lie in [0, 1], got {self.rho}")
        if not self.theta >= 0:
            raise DomainError(f"theta must be >= 0, got {self.theta}")
        if not (self.sigma_n2 >= 0 and self.sigma_c2 >= 0):
            raise DomainError("noise variances must be >= 0")
        if not 0 < self.eta <= 1:
            raise DomainError(f"eta must lie in (0, 1], got {self.eta}")
        if not 0 <= self.r0 < self.sim_radius:
            raise DomainError(f"need 0 <= r0 < sim_radius, got r0={self.r0}, sim_radius={self.sim_radius}")
        if int(self.n_realizations) != self.n_realizations or self.n_realizations < 2:
            raise DomainError(f"n_realizations must be an integer >= 2, got {self.n_realizations}")
        if int(self.workers) != self.workers or self.workers < 1:
            raise DomainError(f"workers must be a positive integer, got {self.workers}")
        err = truncation_error(self)
        if err > TRUNCATION_TOL:
            raise DomainError(
                f"sim_radius={self.sim_radius} truncates {err:.2e} of the interference "
                f"(limit {TRUNCATION_TOL}); increase sim_radius"
            )

    @property
    def mean_interferers(self):
        return self.density * math.pi * (self.sim_radius ** 2 - self.r0 ** 2)


def truncation_error(config):
    """Relative error caused by ignoring interferers beyond ``sim_radius``.

    With an exclusion radius this is the fraction of the infinite-plane mean
    interference lost, (r0/R)^(alpha-2). Without one the mean is infinite, so
    the bound is instead the missing part of the coverage exponent,
    2*pi*density*theta*d^alpha*R^(2-alpha)/(alpha-2).
    """
    a, R = config.alpha, config.sim_radius
    if config.r0 > 0:
        return (config.r0 / R) ** (a - 2)
    return (2 * math.pi * config.density * config.theta * config.distance ** a
            * R ** (2 - a) / (a - 2))


@dataclass(frozen=True)
class NetworkRealization:
    """One snapshot seen by the typical receiver."""

    distances: np.ndarray
    fades: np.ndarray
    serving_fade: float
    substream: int
    index: int


@dataclass(frozen=True)
class LinkStats:
    """Per-realization received powers at unit transmit power.

    ``signal`` is the serving-link power, ``interference`` the summed
    interference and ``strongest`` the largest single interferer.
    """

    signal: np.ndarray
    interference: np.ndarray
    strongest: np.ndarray

    def __len__(self):
        return len(self.signal)


@dataclass(frozen=True)
class NetworkMetrics:
    coverage: float
    coverage_ci: float
    harvested: float
    harvested_ci: float
    n: int
    rho: float
    sic: bool


def _block_rng(seed, block):
    return np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(block,)))


def _sample_block(config, block):
    """Raw draws for one block: counts, squared distances, fades, serving fades."""
    rng = _block_rng(config.seed, block)
    counts = rng.poisson(config.mean_interferers, BLOCK_SIZE)
    total = int(counts.sum())
    r2 = config.r0 ** 2 + rng.random(total) * (config.sim_radius ** 2 - config.r0 ** 2)
    fades = rng.exponential(1.0, total)
    serving = rng.exponential(1.0, BLOCK_SIZE)
    return counts, r2, fades, serving


def sample_realization(config, substream):
    """Realization number ``substream`` of the stream defined by ``config.seed``."""
    substream = int(substream)
    if substream < 0:
        raise DomainError("substream index must be >= 0")
    block, offset = divmod(substream, BLOCK_SIZE)
    counts, r2, fades, serving = _sample_block(config, block)
    start = int(counts[:offset].sum())
    stop = start + int(counts[offset])
    return NetworkRealization(
        distances=np.sqrt(r2[start:stop]),
        fades=fades[start:stop].copy(),
        serving_fade=float(serving[offset]),
        substream=block,
        index=substream,
    )


def _block_stats(args):
    config, block = args
    counts, r2, fades, serving = _sample_block(config, block)
    rx = fades * r2 ** (-config.alpha / 2)
    interference = np.zeros(BLOCK_SIZE)
    strongest = np.zeros(BLOCK_SIZE)
    busy = counts > 0
    if busy.any():
        starts = np.concatenate(([0], np.cumsum(counts)[:-1]))[busy]
        interference[busy] = np.add.reduceat(rx, starts)
        strongest[busy] = np.maximum.reduceat(rx, starts)
    signal = serving * config.distance ** (-config.alpha)
    return signal, interference, strongest


def simulate(config):
    """Per-realization link statistics at unit transmit power.

    Depends only on geometry, density, seed and ``n_realizations``;
    bit-identical for any ``workers``.
    """
    n = int(config.n_realizations)
    n_blocks = -(-n // BLOCK_SIZE)
    tasks = [(config, k) for k in range(n_blocks)]
    if config.workers > 1 and n_blocks > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            parts = list(pool.map(_block_stats, tasks, chunksize=max(1, n_blocks // (4 * config.workers))))
    else:
        parts = [_block_stats(t) for t in tasks]
    signal, interference, strongest = (np.concatenate(col)[:n] for col in zip(*parts))
    return LinkStats(signal, interference, strongest)


def _covered(stats, config, rho, sic):
    p = config.power
    if rho == 0:
        return np.zeros(len(stats), dtype=bool)
    i_info = stats.interference - stats.strongest if sic else stats.interference
    # SINR >= theta  <=>  S >= theta * (I + sigma_n2 + sigma_c2 / rho)
    return p * stats.signal >= config.theta * (p * i_info + config.sigma_n2 + config.sigma_c2 / rho)


def coverage_from_stats(stats, config, rho=None, sic=None):
    rho = config.rho if rho is None else rho
    sic = config.sic if sic is None else sic
    return float(_covered(stats, config, rho, sic).mean())


def metrics_from_stats(stats, config, rho=None, sic=None):
    """Coverage and harvested energy with 95% normal-approximation half-widths."""
    rho = config.rho if rho is None else rho
    sic = config.sic if sic is None else sic
    n = len(stats)
    covered = _covered(stats, config, rho, sic)
    cov = covered.mean()
    harvested = (1.0 - rho) * config.eta * config.power * (stats.signal + stats.interference)
    return NetworkMetrics(
        coverage=float(cov),
        coverage_ci=float(Z95 * math.sqrt(cov * (1 - cov) / n)),
        harvested=float(harvested.mean()),
        harvested_ci=float(Z95 * harvested.std(ddof=1) / math.sqrt(n)),
        n=n,
        rho=float(rho),
        sic=bool(sic),
    )


def evaluate(config, stats=None):
    """Monte Carlo coverage and average harvested energy for ``config``."""
    if stats is None:
        stats = simulate(config)
    return metrics_from_stats(stats, config)


def analytic_coverage(config):
    """Closed-form coverage of the interference-limited PPP without SIC.

    Only valid with r0 = 0, no noise and SIC disabled; rho cancels there.
    """
    if config.sic or config.r0 != 0 or config.sigma_n2 != 0 or config.sigma_c2 != 0:
        raise UnsupportedError("closed form needs sic=False, r0=0 and zero noise")
    delta = 2.0 / config.alpha
    exponent = (math.pi * config.density * config.distance ** 2 * config.theta ** delta
                * gamma(1 + delta) * gamma(1 - delta))
    return math.exp(-exponent)


def mean_interference(config):
    """Campbell's theorem: expected interference power on the annulus."""
    a = config.alpha
    integral = (config.r0 ** (2 - a) - config.sim_radius ** (2 - a)) / (a - 2) if config.r0 > 0 else math.inf
    return 2 * math.pi * config.density * config.power * integral


def adapt_rho_with_sic(config, rho_baseline, stats=None, tol=1e-6, max_iter=200):
    """Lowest splitting factor at which SIC keeps the no-SIC coverage.

    The target is the coverage without SIC at ``rho_baseline``. The search
    bisects over (0, rho_baseline] on a single set of realizations, where
    coverage is exactly monotone in rho. A zero target is kept at the baseline
    (there is no coverage to preserve).
    """
    if not 0 < rho_baseline <= 1:
        raise DomainError(f"rho_baseline must lie in (0, 1], got {rho_baseline}")
    if stats is None:
        stats = simulate(config)
    target = coverage_from_stats(stats, config, rho_baseline, sic=False)
    at_baseline = coverage_from_stats(stats, config, rho_baseline, sic=True)
    assert at_baseline >= target, "SIC lowered coverage; realization statistics are inconsistent"

    if target == 0:
        return rho_baseline, metrics_from_stats(stats, config, rho_baseline, sic=True)

    # Below rho_floor the answer is reported as rho_floor; this also ends the
    # search when sigma_c2 = 0 makes coverage flat in rho.
    rho_floor = tol * rho_baseline
    if coverage_from_stats(stats, config, rho_floor, sic=True) >= target:
        return rho_floor, metrics_from_stats(stats, config, rho_floor, sic=True)
    lo, hi = rho_floor, rho_baseline
    for _ in range(max_iter):
        if hi - lo <= tol * hi:
            break
        mid = 0.5 * (lo + hi)
        if coverage_from_stats(stats, config, mid, sic=True) >= target:
            hi = mid
        else:
            lo = mid
    else:
        raise ConvergenceError("rho bisection hit the iteration cap", residuals=(hi - lo,))
    return hi, metrics_from_stats(stats, config, hi, sic=True)


def power_sweep(config, p_dbw, rho_baselines=(0.5, 0.9), stats=None):
    """Fixed-rho, SIC-adapted and rho -> 0 harvesting versus transmit power.

    Returns a list of row dicts, one per (power, baseline, mode). Every point
    reuses the same realizations.
    """
    if stats is None:
        stats = simulate(config)
    rows = []
    for p in np.asarray(p_dbw, dtype=float):
        cfg = replace(config, power=10.0 ** (p / 10.0))
        bound = metrics_from_stats(stats, cfg, rho=0.0, sic=True)
        for rho_b in rho_baselines:
            fixed = metrics_from_stats(stats, cfg, rho_b, sic=False)
            rho_a, adapted = adapt_rho_with_sic(cfg, rho_b, stats=stats)
            for mode, m in (("fixed", fixed), ("adapted", adapted), ("bound", bound)):
                rows.append({
                    "P_dBW": float(p), "rho_baseline": float(rho_b), "rho_mode": mode,
                    "rho": m.rho, "sic": m.sic,
                    "coverage": m.coverage, "coverage_ci": m.coverage_ci,
                    "harvested_W": m.harvested, "harvested_ci": m.harvested_ci,
                })
    return rows


def onset_power(p_dbw, fixed, adapted, gain_db=1.0):
    """First sweep power at which adapted harvesting beats fixed by ``gain_db``.

    Returns ``inf`` if the gain never reaches that level on the sweep.
    """
    fixed = np.asarray(fixed, dtype=float)
    adapted = np.asarray(adapted, dtype=float)
    hits = np.flatnonzero(adapted >= 10.0 ** (gain_db / 10.0) * fixed)
    return float(np.asarray(p_dbw, dtype=float)[hits[0]]) if hits.size else math.inf
