"""Command-line interface.

Subcommands:
    simulate    <config.json> --out-dir D        trajectory CSV + report JSON
    sweep       <config.json> --figure {3..7} [--grid-override SPEC]
                [--parallel N] --out-dir D       sweep CSV + summary JSON
    phase-match <config.json> --out-dir D        matched-phase comparison CSV
    approx      <config.json>                    closed-form report to stdout

Exit codes: 0 success, 2 config error, 3 numerical failure, 4 I/O error.

--grid-override accepts "lin:lo:hi:n", "log:lo:hi:n" or an explicit
comma-separated value list.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from .analytic import approx_report
from .config import TWO_PI, load_config, parse_config
from .errors import ConfigError, SqblochError
from .experiments import (
    PhaseMatchSpec,
    SweepSpec,
    PHASE_MATCH_COLUMNS,
    default_grid,
    figure_parameter,
    run_single,
    run_sweep,
    run_phase_match,
    write_sweep_csv,
)
from .io_utils import write_csv, write_json

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3
EXIT_IO = 4


def _parse_grid_override(text: str) -> np.ndarray:
    try:
        if text.startswith(("lin:", "log:")):
            kind, lo, hi, n = text.split(":")
            lo_f, hi_f, n_i = float(lo), float(hi), int(n)
            if kind == "lin":
                return np.linspace(lo_f, hi_f, n_i)
            return np.logspace(math.log10(lo_f), math.log10(hi_f), n_i)
        return np.array([float(v) for v in text.split(",")], dtype=float)
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"bad --grid-override {text!r}: {exc}") from exc


def _cmd_simulate(args: argparse.Namespace) -> int:
    cfg = parse_config(load_config(args.config))
    report, _ = run_single(cfg.params, cfg.settings, out_dir=args.out_dir)
    print(json.dumps(report.to_record(), indent=2))
    return EXIT_OK


def _cmd_sweep(args: argparse.Namespace) -> int:
    cfg = parse_config(load_config(args.config))
    parameter = figure_parameter(args.figure)
    grid = (
        _parse_grid_override(args.grid_override)
        if args.grid_override
        else default_grid(args.figure)
    )
    try:
        spec = SweepSpec(parameter=parameter, grid=grid, base=cfg.params, settings=cfg.settings)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    rows = run_sweep(spec, parallel=args.parallel)
    path = write_sweep_csv(args.out_dir, rows, figure=args.figure)
    n_failed = sum(1 for r in rows if r[-1] != "")
    print(f"wrote {path} ({len(rows)} points, {n_failed} failed)")
    return EXIT_OK


def _cmd_phase_match(args: argparse.Namespace) -> int:
    cfg = parse_config(load_config(args.config))
    extras = cfg.extras
    targets = np.asarray(
        extras.get("theta_targets", (-np.logspace(math.log10(0.002), math.log10(0.02), 10)).tolist()),
        dtype=float,
    )
    r_values = tuple(float(r) for r in extras.get("r_values", [1.0, 0.0]))
    bracket_ghz = extras.get("g_bracket_over_2pi_GHz", [0.02, 0.6])
    if (
        not isinstance(bracket_ghz, (list, tuple))
        or len(bracket_ghz) != 2
        or not all(isinstance(v, (int, float)) for v in bracket_ghz)
    ):
        raise ConfigError("field 'g_bracket_over_2pi_GHz': expected [lo, hi] in GHz")
    rel_tol = extras.get("rel_tol", 1e-4)
    if not isinstance(rel_tol, (int, float)) or rel_tol <= 0:
        raise ConfigError("field 'rel_tol': expected a positive number")
    try:
        spec = PhaseMatchSpec(
            theta_targets=targets,
            r_values=r_values,
            base=cfg.params,
            g_bracket=(TWO_PI * float(bracket_ghz[0]), TWO_PI * float(bracket_ghz[1])),
            settings=cfg.settings,
            rel_tol=float(rel_tol),
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    rows = run_phase_match(spec)
    path = write_csv(Path(args.out_dir) / "phase_match.csv", PHASE_MATCH_COLUMNS, rows)
    print(f"wrote {path} ({len(rows)} rows)")
    return EXIT_OK


def _cmd_approx(args: argparse.Namespace) -> int:
    cfg = parse_config(load_config(args.config))
    print(json.dumps(approx_report(cfg.params).to_record(), indent=2))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sqbloch",
        description="Dispersive cavity interaction of a bright squeezed pulse with a matter qubit",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_sim = sub.add_parser("simulate", help="single run: trajectory CSV + report JSON")
    p_sim.add_argument("config")
    p_sim.add_argument("--out-dir", required=True)
    p_sim.set_defaults(func=_cmd_simulate)

    p_sweep = sub.add_parser("sweep", help="parameter sweep for one figure")
    p_sweep.add_argument("config")
    p_sweep.add_argument("--figure", type=int, required=True, choices=[3, 4, 5, 6, 7])
    p_sweep.add_argument("--grid-override", default=None, metavar="SPEC")
    p_sweep.add_argument("--parallel", type=int, default=1, metavar="N")
    p_sweep.add_argument("--out-dir", required=True)
    p_sweep.set_defaults(func=_cmd_sweep)

    p_pm = sub.add_parser("phase-match", help="matched-phase squeezed/coherent comparison")
    p_pm.add_argument("config")
    p_pm.add_argument("--out-dir", required=True)
    p_pm.set_defaults(func=_cmd_phase_match)

    p_ap = sub.add_parser("approx", help="print the closed-form report")
    p_ap.add_argument("config")
    p_ap.set_defaults(func=_cmd_approx)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except SqblochError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
