"""Cross-checks of every solver against an independent oracle."""
import math
from dataclasses import dataclass, replace

import numpy as np

from . import capacity, netgeom, robust


@dataclass
class Check:
    name: str
    passed: bool
    detail: str


def robust_checks(rate=1.0, d_values=(0.01, 0.1, 0.5), n_grid=10_000, rel_tol=0.01):
    nominal = robust.NominalDistribution(rate)
    checks = []
    for direction in robust.DIRECTIONS:
        for d in d_values:
            solved = robust.worst_case_distribution(nominal, d, direction).worst_case_mean
            oracle = robust.discretized_worst_case_mean(nominal, d, direction, n_grid=n_grid)
            err = abs(solved / oracle - 1)
            checks.append(Check(
                f"robust {direction} d={d:g} vs discretized program",
                err <= rel_tol, f"solver={solved:.6f} oracle={oracle:.6f} rel_err={err:.2e}",
            ))
    return checks


def capacity_checks(step=1e-3, tol=1e-3):
    checks = []
    cases = [((0.0, 1.0), 0.75), ((0.0, 1.0, 2.0), 1.5), ((0.0, 0.5, 3.0), 2.0)]
    for energies, b in cases:
        alphabet = capacity.EnergyAlphabet(energies)
        solved = capacity.max_entropy_capacity(alphabet, b).capacity
        oracle = capacity.grid_search_capacity(alphabet, b, step=step)
        err = abs(solved - oracle)
        checks.append(Check(
            f"capacity energies={list(energies)} b={b:g} vs simplex grid search",
            err <= tol, f"solver={solved:.6f} grid={oracle:.6f} abs_err={err:.2e}",
        ))
    return checks


def network_checks(config):
    """MC coverage vs the PPP closed form, and MC interference vs Campbell."""
    checks = []
    free = replace(config, r0=0.0, sigma_n2=0.0, sigma_c2=0.0, sic=False)
    metrics = netgeom.evaluate(free)
    exact = netgeom.analytic_coverage(free)
    gap = abs(metrics.coverage - exact)
    checks.append(Check(
        "network coverage vs closed-form PPP",
        gap <= 3 * metrics.coverage_ci,
        f"mc={metrics.coverage:.5f} exact={exact:.5f} gap={gap:.2e} ci={metrics.coverage_ci:.2e}",
    ))

    stats = netgeom.simulate(config)
    mean_i = config.power * stats.interference.mean()
    se = config.power * stats.interference.std(ddof=1) / math.sqrt(len(stats))
    campbell = netgeom.mean_interference(config)
    checks.append(Check(
        "network mean interference vs Campbell",
        abs(mean_i - campbell) <= 3 * se,
        f"mc={mean_i:.4e} campbell={campbell:.4e} se={se:.2e}",
    ))
    return checks


def run_all(network_config=None, rate=1.0):
    network_config = network_config or netgeom.NetworkConfig()
    return robust_checks(rate) + capacity_checks() + network_checks(network_config)
