"""Worst-case harvested energy inside a Kullback-Leibler ball.

The true harvested-energy distribution ``f`` is only known to lie within
divergence ``d`` of a nominal exponential ``f0``. The worst case minimizes the
mean harvested energy over that ball. Two ball shapes are handled:

``forward``  D(f || f0) <= d. The minimizer is an exponential tilt
             f ~ f0 * exp(-s x), i.e. another exponential with a larger rate
             ``lam`` solving  log(lam) + 1/lam - 1 = d  (unit-rate units).
``reverse``  D(f0 || f) <= d. Stationarity of the Lagrangian gives
             f(x) = lam * f0(x) / (x + mu); ``lam`` is fixed by normalization
             and ``mu`` by the active divergence constraint.
"""
import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy import integrate, optimize

from .errors import ConvergenceError, DomainError

FORWARD = "forward"
REVERSE = "reverse"
DIRECTIONS = (FORWARD, REVERSE)

NORM_TOL = 1e-8
DIV_TOL = 1e-6
TAIL_MASS = 1e-10
MAX_BRACKET_STEPS = 200


@dataclass(frozen=True)
class NominalDistribution:
    """Exponential nominal harvested-energy law with the given rate."""

    rate: float = 1.0
    family: str = "exponential"

    def __post_init__(self):
        if self.family != "exponential":
            raise DomainError(f"unsupported nominal family {self.family!r}")
        if not self.rate > 0:
            raise DomainError(f"rate must be > 0, got {self.rate}")

    @property
    def mean(self):
        return 1.0 / self.rate

    @property
    def x_max(self):
        """Truncation point with nominal tail mass TAIL_MASS."""
        return -math.log(TAIL_MASS) / self.rate

    def pdf(self, x):
        x = np.asarray(x, dtype=float)
        return np.where(x >= 0, self.rate * np.exp(-self.rate * np.maximum(x, 0.0)), 0.0)

    def cdf(self, x):
        x = np.asarray(x, dtype=float)
        return -np.expm1(-self.rate * np.maximum(x, 0.0))


@dataclass(frozen=True)
class TiltedDistribution:
    """Solved worst-case law.

    ``forward``: exponential with rate ``rate``.
    ``reverse``: density ``scale * f0(x) / (x + shift)``. At d = 0 the shift
    is infinite and the law is the nominal one.
    """

    direction: str
    d: float
    nominal: NominalDistribution
    worst_case_mean: float
    rate: float = None
    scale: float = None
    shift: float = None
    residuals: tuple = (0.0, 0.0)

    def pdf(self, x):
        x = np.asarray(x, dtype=float)
        if self.direction == FORWARD:
            return np.where(x >= 0, self.rate * np.exp(-self.rate * np.maximum(x, 0.0)), 0.0)
        if math.isinf(self.shift):
            return self.nominal.pdf(x)
        inv = 1.0 / self.shift
        return self.scale * inv * self.nominal.pdf(x) / (1.0 + inv * np.maximum(x, 0.0))


def _expect(nominal, func):
    """E_f0[func(X)] by adaptive quadrature on [0, x_max]."""
    val, _ = integrate.quad(
        lambda x: func(x) * nominal.rate * math.exp(-nominal.rate * x),
        0.0, nominal.x_max, limit=200, epsabs=1e-14, epsrel=1e-12,
    )
    return val


def _reverse_terms(nominal, s):
    """Normalization integral and divergence for inverse shift s = 1/mu.

    Written in terms of s so that s -> 0 recovers the nominal law without
    catastrophic cancellation.
    """
    norm = _expect(nominal, lambda x: 1.0 / (1.0 + s * x))
    div = _expect(nominal, lambda x: math.log1p(s * x)) + math.log(norm)
    return norm, div


def _bracket_root(func, lo, hi, target):
    """Grow ``hi`` geometrically until func(hi) >= target."""
    for _ in range(MAX_BRACKET_STEPS):
        if func(hi) >= target:
            return lo, hi
        lo, hi = hi, hi * 2.0
    raise ConvergenceError(f"could not bracket root for target {target}", residuals=(func(hi) - target,))


def _solve_forward(nominal, d):
    if d == 0:
        lam = 1.0
    else:
        g = lambda lam: math.log(lam) + 1.0 / lam - 1.0
        lo, hi = _bracket_root(g, 1.0, 2.0, d)
        lam = optimize.brentq(lambda v: g(v) - d, lo, hi, xtol=1e-15, rtol=4 * np.finfo(float).eps, maxiter=500)
        resid = g(lam) - d
        if abs(resid) > DIV_TOL:
            raise ConvergenceError("forward-KL tilt did not converge", residuals=(0.0, resid))
    rate = nominal.rate * lam
    return TiltedDistribution(FORWARD, d, nominal, 1.0 / rate, rate=rate)


def _solve_reverse(nominal, d):
    if d == 0:
        return TiltedDistribution(REVERSE, d, nominal, nominal.mean, scale=1.0, shift=math.inf)
    div = lambda s: _reverse_terms(nominal, s)[1]
    # s scales like a rate, so start the bracket at the nominal rate.
    lo, hi = _bracket_root(div, 0.0, nominal.rate, d)
    s = optimize.brentq(lambda v: div(v) - d, lo, hi, xtol=1e-14, rtol=1e-13, maxiter=500)

    norm, achieved = _reverse_terms(nominal, s)
    mu = 1.0 / s
    lam = mu / norm
    mass = _expect(nominal, lambda x: lam / (x + mu))
    residuals = (mass - 1.0, achieved - d)
    if abs(residuals[0]) > NORM_TOL or abs(residuals[1]) > DIV_TOL:
        raise ConvergenceError("reverse-KL worst case did not converge", residuals=residuals)
    mean = _expect(nominal, lambda x: lam * x / (x + mu))
    return TiltedDistribution(REVERSE, d, nominal, mean, scale=lam, shift=mu, residuals=residuals)


def worst_case_distribution(nominal, d, direction=FORWARD):
    """Solve for the mean-minimizing law within KL radius ``d`` (nats)."""
    if direction not in DIRECTIONS:
        raise DomainError(f"direction must be one of {DIRECTIONS}, got {direction!r}")
    if not d >= 0 or math.isinf(d):
        raise DomainError(f"divergence radius must be finite and >= 0, got {d}")
    if direction == FORWARD:
        return _solve_forward(nominal, float(d))
    return _solve_reverse(nominal, float(d))


def divergence(dist):
    """Divergence actually achieved by ``dist`` in its own direction (nats)."""
    nominal = dist.nominal
    if dist.direction == FORWARD:
        lam = dist.rate / nominal.rate
        return math.log(lam) + 1.0 / lam - 1.0
    if math.isinf(dist.shift):
        return 0.0
    return _expect(nominal, lambda x: math.log((x + dist.shift) / dist.scale))


def total_mass(dist):
    """Integral of the solved density over [0, inf)."""
    if dist.direction == FORWARD or math.isinf(dist.shift):
        return 1.0
    return _expect(dist.nominal, lambda x: dist.scale / (x + dist.shift))


def worst_case_cdf(dist, x_grid):
    """CDF of the worst-case law on a sorted, nonnegative grid."""
    x = np.asarray(x_grid, dtype=float)
    if x.ndim != 1:
        raise DomainError("x_grid must be one-dimensional")
    if np.any(np.isnan(x)) or np.any(x < 0):
        raise DomainError("x_grid must be nonnegative")
    if np.any(np.diff(x) < 0):
        raise DomainError("x_grid must be sorted ascending")

    if dist.direction == FORWARD:
        return -np.expm1(-dist.rate * x)
    if math.isinf(dist.shift):
        return dist.nominal.cdf(x)

    pdf = lambda t: float(dist.pdf(t))
    edges = np.concatenate(([0.0], x))
    pieces = np.array([
        integrate.quad(pdf, a, b, limit=100, epsabs=1e-14, epsrel=1e-12)[0] if b > a else 0.0
        for a, b in zip(edges[:-1], edges[1:])
    ])
    return np.clip(np.cumsum(pieces), 0.0, 1.0)


def discretized_worst_case_mean(nominal, d, direction=FORWARD, n_grid=10_000):
    """Brute-force oracle: the same problem as a finite convex program.

    The nominal law is binned on ``n_grid`` cells of [0, x_max]; the worst-case
    probability vector is found by a generic conic solver with the KL ball as
    an explicit constraint. Shares no algebra with the parametric solvers.
    """
    import cvxpy as cp

    if direction not in DIRECTIONS:
        raise DomainError(f"direction must be one of {DIRECTIONS}, got {direction!r}")
    edges = np.linspace(0.0, nominal.x_max, n_grid + 1)
    q = np.diff(nominal.cdf(edges))
    q /= q.sum()
    x = 0.5 * (edges[:-1] + edges[1:])

    # optimize the likelihood ratio w = p / q; tail cells carry q ~ 1e-10 and
    # working with p directly leaves the conic solver badly scaled
    w = cp.Variable(n_grid, nonneg=True)
    if direction == FORWARD:
        ball = -q @ cp.entr(w) <= d
    else:
        ball = -q @ cp.log(w) <= d
    prob = cp.Problem(cp.Minimize((q * x) @ w), [q @ w == 1, ball])
    with warnings.catch_warnings():
        # "optimal_inaccurate" is accepted below; the check tolerance is 1%
        warnings.simplefilter("ignore", UserWarning)
        prob.solve(solver=cp.CLARABEL)
    if prob.status not in ("optimal", "optimal_inaccurate"):
        raise ConvergenceError(f"discretized program ended with status {prob.status}")
    return float((q * x) @ w.value)
