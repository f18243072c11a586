"""Command-line front end: one subcommand per experiment, plus ``validate``.

Exit codes: 0 on success, 1 on a domain or configuration error (and on any
failed ``validate`` check), 2 when a numerical solver does not converge.
"""
import argparse
import csv
import io
import json
import logging
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__, capacity, config as cfgmod, netgeom, receivers, robust, waveform
from .errors import ConfigError, ConvergenceError, WiptError
from .rectenna import RectennaModel, harvest_dc

log = logging.getLogger("wipt")

SEED_ENV = "WIPT_SEED"
SUBCOMMANDS = ("models", "robust", "capacity", "receivers", "network", "waveform", "validate")


def _models(cfg, args):
    p = np.linspace(0.0, cfg["models_p_max"], cfg["models_n_points"])
    lin = RectennaModel.linear(cfg["linear_eta"])
    pwl = RectennaModel.piecewise(cfg["pwl_eta"], cfg["pwl_p_sens"], cfg["pwl_p_sat"])
    sig = RectennaModel.sigmoid(cfg["sig_p_sat"], cfg["sig_a"], cfg["sig_b"])
    diode = RectennaModel.diode(cfg["diode_k2"], cfg["diode_k4"])
    header = ["p_rf_W", "linear_W", "piecewise_W", "sigmoid_W", "diode_single_tone_W"]
    rows = []
    for pi, a, b, c in zip(p, harvest_dc(lin, p), harvest_dc(pwl, p), harvest_dc(sig, p)):
        tone = waveform.synthesize(waveform.MultitoneWaveform(1, power=float(pi)))
        rows.append([pi, a, b, c, waveform.harvest_dc_waveform(diode, tone)])
    return header, rows, []


def _robust(cfg, args):
    nominal = robust.NominalDistribution(cfg["robust_rate"])
    x = np.linspace(0.0, cfg["robust_x_max"], cfg["robust_n_points"])
    rows, notes = [], []
    for direction in cfg["robust_directions"]:
        for d in cfg["robust_d_values"]:
            dist = robust.worst_case_distribution(nominal, d, direction)
            notes.append(f"worst_case_mean direction={direction} d={d!r} mean={dist.worst_case_mean!r}")
            rows.extend([direction, d, xi, ci] for xi, ci in zip(x, robust.worst_case_cdf(dist, x)))
    return ["direction", "d", "x", "cdf"], rows, notes


def _capacity(cfg, args):
    alphabet = capacity.EnergyAlphabet(tuple(cfg["capacity_energies"]))
    grid = cfgmod.parse_grid(args.grid or cfg["capacity_grid"])
    curve = capacity.region_boundary(alphabet, grid)
    k = len(alphabet)
    header = ["b", "capacity_bpcu"] + [f"p_symbol_{i}" for i in range(k)]
    rows = [[b, c, *dist] for b, c, dist in zip(curve.energy, curve.rate, curve.extra["distribution"])]
    return header, rows, []


def _receivers(cfg, args):
    channel = receivers.SimoChannel(
        gains=tuple(cfg["rx_gains"]), power=cfg["rx_power"],
        sigma_n2=cfg["rx_sigma_n2"], sigma_c2=cfg["rx_sigma_c2"],
        harvester=RectennaModel.linear(cfg["rx_eta"]),
    )
    grid = np.linspace(0.0, 1.0, cfg["rx_n_points"])
    curves = [receivers.ts_region(channel, grid), receivers.ps_region(channel, grid)]
    if len(channel.gains) >= 2:
        curves.append(receivers.as_points(channel))
    rows = [[c.scheme, p, r, e] for c in curves for p, r, e in zip(c.parameter, c.rate, c.energy)]
    corner = receivers.outer_bound(channel)
    rows.append(["outer", "corner", corner.rate, corner.energy])
    return ["scheme", "parameter", "rate_bpcu", "energy_W"], rows, []


def _network_config(cfg, args):
    return netgeom.NetworkConfig(
        density=cfg["net_density"], distance=cfg["net_distance"], alpha=cfg["net_alpha"],
        theta=cfg["net_theta"], sigma_n2=cfg["net_sigma_n2"], sigma_c2=cfg["net_sigma_c2"],
        eta=cfg["net_eta"], r0=cfg["net_r0"], sim_radius=cfg["net_sim_radius"],
        n_realizations=cfg["net_n_realizations"], seed=cfg["seed"], workers=cfg["net_workers"],
    )


def _network(cfg, args):
    net = _network_config(cfg, args)
    p_dbw = np.linspace(cfg["net_p_dbw_min"], cfg["net_p_dbw_max"], cfg["net_n_points"])
    log.info("simulating %d realizations", net.n_realizations)
    rows = netgeom.power_sweep(net, p_dbw, tuple(cfg["net_rho_values"]))
    header = ["P_dBW", "rho_baseline", "rho_mode", "rho", "sic",
              "coverage", "coverage_ci", "harvested_W", "harvested_ci"]
    return header, [[r[h] for h in header] for r in rows], []


def _waveform(cfg, args):
    diode = RectennaModel.diode(cfg["diode_k2"], cfg["diode_k4"])
    rng = np.random.default_rng(cfg["seed"])
    n_info = cfg["wf_n_info"]
    info_idx = tuple(range(1, 2 * n_info, 2))
    symbols = waveform.qpsk((cfg["wf_n_symbols"], n_info), rng)
    header = ["N", "papr", "harvested_W", "max_symbol_error", "composite_harvested_W"]
    rows = []
    for n in cfg["wf_tone_counts"]:
        energy = waveform.MultitoneWaveform(n, power=cfg["wf_power"])
        # energy tones on even indices, information on odd ones
        shifted = waveform.MultitoneWaveform(n, power=cfg["wf_power"], indices=tuple(range(2, 2 * n + 1, 2)))
        top = max(2 * n, 2 * n_info - 1)
        sps = int(2 ** np.ceil(np.log2(waveform.MIN_OVERSAMPLING * top)))
        comp = waveform.CompositeSignal(info_idx, symbols, shifted, cfg["wf_info_power"], sps)
        report = waveform.info_integrity_check(comp, diode)
        rows.append([n, waveform.papr(energy), waveform.harvest_multitone(energy, diode),
                     report.max_symbol_error, report.harvested])
    return header, rows, []


def _validate(cfg, args):
    from . import validation

    checks = validation.run_all(_network_config(cfg, args), rate=cfg["robust_rate"])
    for chk in checks:
        print(f"{'PASS' if chk.passed else 'FAIL'}  {chk.name}  ({chk.detail})")
    return all(chk.passed for chk in checks)


HANDLERS = {
    "models": _models, "robust": _robust, "capacity": _capacity,
    "receivers": _receivers, "network": _network, "waveform": _waveform,
}

PLOT_TEMPLATES = {
    "models": "plot for [c=2:5] '{csv}' using 1:c with lines title columnhead(c)",
    "robust": "plot '{csv}' using 3:4 with lines title 'worst-case CDF'",
    "capacity": "plot '{csv}' using 1:2 with lines title 'capacity (bpcu)'",
    "receivers": "plot '{csv}' using 4:3 with linespoints title 'rate vs energy'",
    "network": "set logscale y\nplot '{csv}' using 1:8 with points title 'harvested (W)'",
    "waveform": "plot '{csv}' using 1:3 with linespoints title 'harvested (W)'",
}


def build_parser():
    parser = argparse.ArgumentParser(prog="wipt", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in SUBCOMMANDS:
        p = sub.add_parser(name)
        p.add_argument("-c", "--config", help="flat YAML config file")
        p.add_argument("-o", "--output", help="CSV output path (default: stdout)")
        p.add_argument("--seed", type=int, help=f"master seed (overrides ${SEED_ENV} and the config)")
        p.add_argument("--n-realizations", type=int, help="override net_n_realizations")
        p.add_argument("--workers", type=int, help="override net_workers")
        p.add_argument("--plot-script", help="also write a gnuplot script to this path")
        p.add_argument("-v", "--verbose", action="count", default=0)
        if name == "capacity":
            p.add_argument("--grid", help="energy-rate grid start:stop:step")
    return parser


def resolve_config(args, environ=None):
    environ = os.environ if environ is None else environ
    cfg = cfgmod.load(args.config) if args.config else cfgmod.defaults()
    if environ.get(SEED_ENV):
        try:
            cfg["seed"] = int(environ[SEED_ENV])
        except ValueError as exc:
            raise ConfigError(f"{SEED_ENV}={environ[SEED_ENV]!r} is not an integer") from exc
    if args.seed is not None:
        cfg["seed"] = args.seed
    if args.n_realizations is not None:
        cfg["net_n_realizations"] = args.n_realizations
    if args.workers is not None:
        cfg["net_workers"] = args.workers
    return cfg


def render_csv(command, cfg, header, rows, notes=()):
    buf = io.StringIO()
    buf.write(f"# wipt {__version__} {command}\n")
    # worker count changes scheduling only, never results
    resolved = {k: v for k, v in cfg.items() if k != "net_workers"}
    buf.write("# config: " + json.dumps(resolved, sort_keys=True) + "\n")
    for note in notes:
        buf.write(f"# {note}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def _fmt(value):
    if isinstance(value, (bool, np.bool_)):
        return str(bool(value)).lower()
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    if isinstance(value, np.integer):
        return str(int(value))
    return value


def _check_output(path):
    parent = Path(path).resolve().parent
    if not parent.is_dir() or not os.access(parent, os.W_OK):
        raise ConfigError(f"output directory is not writable: {parent}")


def run(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2), format="%(levelname)s %(message)s")
    try:
        cfg = resolve_config(args)
        if args.command == "validate":
            return 0 if _validate(cfg, args) else 1
        for path in (args.output, args.plot_script):
            if path:
                _check_output(path)
        header, rows, notes = HANDLERS[args.command](cfg, args)
        text = render_csv(args.command, cfg, header, rows, notes)
        if args.output:
            Path(args.output).write_text(text)
        else:
            sys.stdout.write(text)
        if args.plot_script:
            csv_name = args.output or f"{args.command}.csv"
            script = ("set datafile separator ','\nset key autotitle columnhead\n"
                      + PLOT_TEMPLATES[args.command].format(csv=csv_name) + "\n")
            Path(args.plot_script).write_text(script)
    except ConvergenceError as exc:
        print(f"wipt: solver did not converge: {exc} (residuals={exc.residuals})", file=sys.stderr)
        return 2
    except WiptError as exc:
        print(f"wipt: {exc}", file=sys.stderr)
        return 1
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
