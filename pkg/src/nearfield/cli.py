"""``nearfield`` command-line front end.

Each subcommand resolves a scenario from ``--config`` plus flag overrides and
writes a CSV (or JSON) table of figure data.

Exit codes: 0 success, 2 usage/config error, 3 numerical failure.
"""

import argparse
import sys
import warnings

import numpy as np

from . import io as nfio
from .beamgrid import beam_directions, beam_pattern
from .config import ConfigError, ScenarioConfig, load_config, merge
from .correlation import (
    NotPSDError,
    build_correlation,
    eigen_spectrum,
    monte_carlo_correlation,
)
from .geometry import field_boundaries
from .spectrum import (
    EndFireWarning,
    closed_form_gain,
    dft_spectrum,
    effective_freq_sweep,
    exact_gain_profile,
    sample_wavefront,
)

EXIT_OK, EXIT_USAGE, EXIT_NUMERIC = 0, 2, 3


class NumericalFailure(RuntimeError):
    pass


def _db(x):
    with np.errstate(divide="ignore"):
        return 10.0 * np.log10(np.asarray(x, dtype=np.float64))


def _table(columns, rows, cfg, fmt, comments=(), extra=None):
    if fmt == "json":
        payload = {"config": cfg.echo(), "columns": list(columns), "rows": [list(r) for r in rows]}
        if extra:
            payload.update(extra)
        return nfio.render_json(payload)
    return nfio.render_csv(columns, rows, cfg.echo(), comments)


def cmd_boundaries(cfg, fmt):
    b = field_boundaries(cfg.geometry())
    cols = ["reactive_m", "amplitude_m", "fraunhofer_m"]
    if fmt == "json":
        return nfio.render_json({"config": cfg.echo(), **b.as_dict()})
    return _table(cols, [[b.reactive_m, b.amplitude_m, b.fraunhofer_m]], cfg, fmt)


def _closed_form_or_none(geom, loc, dirs):
    if 1.0 - loc.dir_cosine**2 <= 0.0:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", EndFireWarning)
            return closed_form_gain(geom, loc, dirs)
    return closed_form_gain(geom, loc, dirs)


def cmd_spectrum(cfg, fmt):
    geom = cfg.geometry()
    loc = cfg.user()
    model = cfg.get_str("spectrum.model", "near_field")
    spec = dft_spectrum(sample_wavefront(geom, loc, model), geom.spacing_m, loc)
    n = geom.n_antennas
    dirs = spec.bin_freqs * geom.wavelength_m
    gain = spec.magnitudes**2 / n**2
    approx = _closed_form_or_none(geom, loc, dirs) if model == "near_field" else [None] * n
    rows = [
        [int(k), f, t, g, gd, a, m]
        for k, f, t, g, gd, a, m in zip(
            spec.bin_indices, spec.bin_freqs, dirs, gain, _db(gain), approx, spec.magnitudes
        )
    ]
    cols = [
        "bin_index", "spatial_frequency_per_m", "dir_cosine",
        "gain_linear", "gain_db", "gain_closed_form", "magnitude",
    ]
    return _table(cols, rows, cfg, fmt)


def cmd_beams(cfg, fmt):
    geom = cfg.geometry()
    n_points = cfg.get_int("beams.n_points", 1801)
    if n_points < 2:
        raise ConfigError("beams.n_points must be >= 2")
    theta = np.linspace(0.0, np.pi, n_points)
    dirs = beam_directions(geom)
    gains_db = _db(beam_pattern(geom, theta))
    cols = ["theta_rad"] + [f"gain_db_beam{k + 1}" for k in range(dirs.size)]
    rows = [[t, *g] for t, g in zip(theta, gains_db)]
    comment = "beam_dir_cosines: " + " ".join(nfio.fmt_float(t) for t in dirs)
    return _table(cols, rows, cfg, fmt, [comment], {"beam_dir_cosines": dirs.tolist()})


def cmd_gain(cfg, fmt):
    geom = cfg.geometry()
    loc = cfg.user()
    phase_model = cfg.get_str("numerics.phase_model", "exact")
    prof = exact_gain_profile(geom, loc, phase_model)
    approx = _closed_form_or_none(geom, loc, prof.grid.dir_cosines)
    g = prof.exact_gain
    gn = g / g.max()
    # The end-fire indicator can be all zero when the user's direction is off-grid.
    an = approx / approx.max() if approx.max() > 0 else approx
    rows = [
        [int(b), t / geom.wavelength_m, t, gi, gdb, ai, gni, ani]
        for b, t, gi, gdb, ai, gni, ani in zip(
            prof.grid.bins, prof.grid.dir_cosines, g, _db(g), approx, gn, an
        )
    ]
    cols = [
        "bin_index", "spatial_frequency_per_m", "dir_cosine", "gain_linear", "gain_db",
        "gain_closed_form", "gain_normalized", "gain_closed_form_normalized",
    ]
    return _table(cols, rows, cfg, fmt)


def cmd_effective(cfg, fmt):
    geom = cfg.geometry()
    threshold = cfg.threshold()
    phase_model = cfg.get_str("numerics.phase_model", "exact")
    parameter = cfg.get_str("sweep.parameter", "distance")
    bounds = field_boundaries(geom)
    if parameter == "distance":
        fixed = cfg.user_theta()
        start = cfg.sweep_bound("sweep.start")
        stop = cfg.sweep_bound("sweep.stop")
        start = bounds.amplitude_m if start is None else start
        stop = bounds.fraunhofer_m if stop is None else stop
        num = cfg.get_int("sweep.num", 100)
    elif parameter == "angle":
        fixed = cfg.get_float("user.distance_m")
        start = cfg.sweep_bound("sweep.start")
        stop = cfg.sweep_bound("sweep.stop")
        start = 0.01 if start is None else start
        stop = np.pi - 0.01 if stop is None else stop
        num = cfg.get_int("sweep.num", 181)
    elif parameter == "point":
        loc = cfg.user()
        sweep = effective_freq_sweep(geom, "distance", [loc.distance_m], loc.theta_rad, threshold, phase_model)
        return _table(["parameter_value", "effective_count"], sweep.rows(), cfg, fmt)
    else:
        raise ConfigError(f"sweep.parameter must be distance, angle or point, got {parameter!r}")
    if num < 1:
        raise ConfigError("sweep.num must be >= 1")
    values = np.linspace(start, stop, num)
    sweep = effective_freq_sweep(geom, parameter, values, fixed, threshold, phase_model)
    diag = {
        "non_increasing": sweep.non_increasing,
        "n_increases": int(sweep.increases.size),
        "peak_parameter_value": sweep.peak_value,
        "peak_count": int(sweep.counts.max()),
    }
    comment = " ".join(f"{k}={nfio._cell(v)}" for k, v in diag.items())
    return _table(["parameter_value", "effective_count"], sweep.rows(), cfg, fmt, [comment], {"diagnostics": diag})


def cmd_dof(cfg, fmt, seed):
    geom = cfg.geometry()
    region = cfg.region()
    phase_model = cfg.get_str("numerics.phase_model", "expansion")
    allow = cfg.get_bool("numerics.allow_below_db", False)
    method = cfg.get_str("numerics.method", "quadrature")
    if method == "quadrature":
        mat = build_correlation(geom, region, cfg.quadrature(), phase_model, allow)
    elif method == "monte_carlo":
        mat = monte_carlo_correlation(
            geom, region,
            cfg.get_int("numerics.mc_paths", 8),
            cfg.get_int("numerics.mc_realizations", 25000),
            seed, phase_model, allow,
        )
    else:
        raise ConfigError(f"numerics.method must be quadrature or monte_carlo, got {method!r}")
    spec = eigen_spectrum(
        mat,
        cfg.get_float("numerics.energy_fraction", 0.99),
        cfg.get_float("numerics.tau", 1e-3),
    )
    if not np.all(np.isfinite(spec.eigenvalues)):
        raise NumericalFailure("non-finite eigenvalues")
    matrix_path = cfg.values.get("output.matrix_path")
    if matrix_path:
        nfio.write_correlation_binary(matrix_path, mat)
    mode = cfg.get_str("numerics.eigen_rank_mode", "energy")
    if mode not in ("energy", "threshold"):
        raise ConfigError("numerics.eigen_rank_mode must be energy or threshold")
    ranks = {
        "effective_rank": spec.effective_rank_energy if mode == "energy" else spec.effective_rank_threshold,
        "effective_rank_energy": spec.effective_rank_energy,
        "effective_rank_threshold": spec.effective_rank_threshold,
    }
    if mat.quadrature is not None:
        ranks["n_theta"] = mat.quadrature.n_theta
        ranks["n_u"] = mat.quadrature.n_u
    rows = [
        [k + 1, e, edb, c]
        for k, (e, edb, c) in enumerate(zip(spec.eigenvalues, spec.db_rel_max(), spec.cumulative_energy()))
    ]
    cols = ["index", "eigenvalue", "eigenvalue_db_rel_max", "cumulative_energy_fraction"]
    comment = " ".join(f"{k}={v}" for k, v in ranks.items())
    return _table(cols, rows, cfg, fmt, [comment], ranks)


COMMANDS = {
    "boundaries": cmd_boundaries,
    "spectrum": cmd_spectrum,
    "beams": cmd_beams,
    "gain": cmd_gain,
    "effective": cmd_effective,
    "dof": cmd_dof,
}

_SHORTCUTS = [
    ("--n-antennas", "array.n_antennas", "number of antennas"),
    ("--spacing", "array.spacing_over_lambda", "antenna spacing in wavelengths"),
    ("--wavelength", "array.wavelength_m", "wavelength in meters"),
    ("--carrier", "array.carrier_hz", "carrier frequency in Hz"),
    ("--theta-deg", "user.theta_deg", "user angle in degrees"),
    ("--theta-rad", "user.theta_rad", "user angle in radians"),
    ("--distance", "user.distance_m", "user distance in meters"),
]


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH", help="flat key = value scenario file")
    common.add_argument("--out", metavar="PATH", help="output file (default: stdout)")
    common.add_argument("--format", choices=("csv", "json"), default=None)
    common.add_argument("--seed", type=int, default=None)
    common.add_argument(
        "--set", action="append", default=[], metavar="KEY=VALUE", help="override any config key"
    )
    for flag, key, helptext in _SHORTCUTS:
        common.add_argument(flag, dest=key, default=None, help=f"{helptext} ({key})")

    parser = argparse.ArgumentParser(prog="nearfield", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    return parser


def resolve(args) -> ScenarioConfig:
    values = load_config(args.config) if args.config else {}
    flags = {}
    for item in args.set:
        if "=" not in item:
            raise ConfigError(f"--set expects KEY=VALUE, got {item!r}")
        k, v = item.split("=", 1)
        flags[k.strip()] = v.strip()
    for _, key, _ in _SHORTCUTS:
        val = getattr(args, key)
        if val is not None:
            flags[key] = val
    if args.seed is not None:
        flags["numerics.seed"] = str(args.seed)
    if args.format is not None:
        flags["output.format"] = args.format
    if args.out is not None:
        flags["output.path"] = args.out
    return ScenarioConfig(merge(values, flags))


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = resolve(args)
        fmt = cfg.get_str("output.format", "csv")
        if fmt not in ("csv", "json"):
            raise ConfigError(f"output.format must be csv or json, got {fmt!r}")
        seed = cfg.get_int("numerics.seed", 0)
        handler = COMMANDS[args.command]
        with np.errstate(invalid="raise", over="raise"):
            text = handler(cfg, fmt, seed) if args.command == "dof" else handler(cfg, fmt)
    except (NotPSDError, np.linalg.LinAlgError, FloatingPointError, NumericalFailure) as exc:
        print(f"nearfield {args.command}: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ValueError as exc:
        print(f"nearfield {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    out = cfg.values.get("output.path")
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
