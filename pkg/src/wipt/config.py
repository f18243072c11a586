"""Flat, typed configuration shared by all CLI subcommands.

A config file is a YAML mapping of ``key: value`` pairs with no nesting.
Every key must appear in :data:`SCHEMA`; unknown keys and wrongly typed
values are rejected. Keys are prefixed by the subcommand that reads them.
"""
from pathlib import Path

import yaml

from .errors import ConfigError

# key -> (type, default, help). Types: float, int, str, "floats", "ints", "strs".
SCHEMA = {
    "seed": (int, 0, "master seed for every random draw"),

    "linear_eta": (float, 1.0, "linear model efficiency"),
    "pwl_eta": (float, 0.5, "piecewise model slope"),
    "pwl_p_sens": (float, 0.1, "piecewise model sensitivity threshold (W)"),
    "pwl_p_sat": (float, 0.2, "piecewise model saturation DC power (W)"),
    "sig_p_sat": (float, 1.0, "sigmoid saturation DC power (W)"),
    "sig_a": (float, 1.0, "sigmoid steepness (1/W)"),
    "sig_b": (float, 1.0, "sigmoid inflection input power (W)"),
    "diode_k2": (float, 1.0, "diode second-order coefficient"),
    "diode_k4": (float, 1.0, "diode fourth-order coefficient"),
    "models_p_max": (float, 2.0, "largest RF input power in the models sweep (W)"),
    "models_n_points": (int, 101, "points in the models sweep"),

    "robust_rate": (float, 1.0, "rate of the nominal exponential"),
    "robust_d_values": ("floats", [0.0, 0.05, 0.2, 0.5], "KL radii (nats)"),
    "robust_directions": ("strs", ["forward", "reverse"], "divergence directions"),
    "robust_x_max": (float, 5.0, "upper end of the CDF grid"),
    "robust_n_points": (int, 500, "CDF grid points"),

    "capacity_energies": ("floats", [0.0, 1.0], "per-symbol energies (epcu)"),
    "capacity_grid": (str, "0:1:0.01", "energy-rate grid start:stop:step"),

    "rx_gains": ("floats", [0.5, 0.5], "per-antenna channel power gains"),
    "rx_power": (float, 1.0, "transmit power (W)"),
    "rx_sigma_n2": (float, 0.5, "antenna noise variance (W)"),
    "rx_sigma_c2": (float, 0.5, "conversion noise variance (W)"),
    "rx_eta": (float, 1.0, "linear harvester efficiency"),
    "rx_n_points": (int, 101, "points on the tau and rho grids"),

    "net_density": (float, 1e-3, "transmitter density (1/m^2)"),
    "net_distance": (float, 10.0, "pair distance (m)"),
    "net_alpha": (float, 4.0, "path-loss exponent"),
    "net_theta": (float, 1.0, "SINR threshold (linear)"),
    "net_sigma_n2": (float, 0.1, "antenna noise variance (W)"),
    "net_sigma_c2": (float, 0.1, "conversion noise variance (W)"),
    "net_eta": (float, 1.0, "harvester efficiency"),
    "net_r0": (float, 1.0, "interferer exclusion radius (m)"),
    "net_sim_radius": (float, 300.0, "simulation disc radius (m)"),
    "net_n_realizations": (int, 100_000, "Monte Carlo realizations per sweep"),
    "net_workers": (int, 1, "worker processes"),
    "net_rho_values": ("floats", [0.5, 0.9], "baseline splitting factors"),
    "net_p_dbw_min": (float, 10.0, "lowest transmit power (dBW)"),
    "net_p_dbw_max": (float, 80.0, "highest transmit power (dBW)"),
    "net_n_points": (int, 30, "points in the power sweep"),

    "wf_power": (float, 1.0, "energy waveform power (W)"),
    "wf_tone_counts": ("ints", [1, 2, 4, 8], "numbers of energy tones"),
    "wf_n_info": (int, 4, "information subcarriers (odd indices)"),
    "wf_info_power": (float, 0.25, "power per information subcarrier (W)"),
    "wf_n_symbols": (int, 16, "information symbols per subcarrier"),
}


def defaults():
    return {k: (list(v[1]) if isinstance(v[1], list) else v[1]) for k, v in SCHEMA.items()}


def _coerce(key, value):
    kind = SCHEMA[key][0]
    if kind in ("floats", "ints", "strs"):
        if not isinstance(value, list):
            raise ConfigError(f"{key}: expected a list, got {value!r}")
        scalar = {"floats": float, "ints": int, "strs": str}[kind]
        return [_coerce_scalar(key, scalar, v) for v in value]
    return _coerce_scalar(key, kind, value)


def _coerce_scalar(key, kind, value):
    if isinstance(value, bool):
        raise ConfigError(f"{key}: expected {kind.__name__}, got boolean {value!r}")
    if kind is float and isinstance(value, (int, float)):
        return float(value)
    if kind is int and isinstance(value, int):
        return value
    if kind is str and isinstance(value, str):
        return value
    raise ConfigError(f"{key}: expected {kind.__name__}, got {value!r}")


def validate(values):
    """Check keys and types; return a new dict with defaults filled in."""
    unknown = sorted(set(values) - set(SCHEMA))
    if unknown:
        raise ConfigError(f"unknown config key(s): {', '.join(unknown)}")
    out = defaults()
    for key, value in values.items():
        out[key] = _coerce(key, value)
    return out


def load(path):
    """Read and validate a config file; missing keys take their defaults."""
    path = Path(path)
    if not path.is_file():
        raise ConfigError(f"config file not found: {path}")
    try:
        data = yaml.safe_load(path.read_text())
    except yaml.YAMLError as exc:
        raise ConfigError(f"cannot parse config file {path}: {exc}") from exc
    if data is None:
        data = {}
    if not isinstance(data, dict):
        raise ConfigError(f"config file {path} must hold a flat key: value mapping")
    for key, value in data.items():
        if isinstance(value, dict):
            raise ConfigError(f"{key}: nested sections are not allowed")
    return validate(data)


def parse_grid(spec):
    """Parse ``start:stop:step`` into an inclusive list of values."""
    try:
        start, stop, step = (float(v) for v in spec.split(":"))
    except ValueError as exc:
        raise ConfigError(f"grid must look like start:stop:step, got {spec!r}") from exc
    if step <= 0 or stop < start:
        raise ConfigError(f"grid needs step > 0 and stop >= start, got {spec!r}")
    n = int(round((stop - start) / step))
    if abs(start + n * step - stop) > 1e-9 * max(1.0, abs(stop)):
        raise ConfigError(f"grid step does not divide the range evenly: {spec!r}")
    return [round(start + i * step, 12) if i < n else stop for i in range(n + 1)]
