"""Command line entry point: ``scrambling {verify,scan,sweep,report,balance}``."""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys

import numpy as np

from ..quantifiers import balancing_points
from .fit import fit_frequency
from .identity import run_identity_suite
from .io import ScanIOError, format_csv, read_csv, write_csv, write_gnuplot
from .report import full_report, format_text
from .scan import ConfigError, ScanConfig, run_scan, scan_balancing_points

EXIT_OK, EXIT_FAIL, EXIT_CONFIG, EXIT_IO = 0, 1, 2, 3

_SCAN_FLAGS = {
    "state": "state", "w": "w", "v": "v", "qubit": "qubit", "method": "method",
    "t_min": "t_min", "t_max": "t_max", "steps": "steps", "out": "out", "seed": "seed",
}
_PARAM_FLAGS = {"jz": "j_z", "b": "b", "coupling_multiplier": "coupling_multiplier",
                "field_multiplier": "field_multiplier"}


def _add_scan_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="JSON file mirroring the scan config; flags override it")
    p.add_argument("--state", help="phi+, phi-, psi+, psi-, basis:00, or a JSON amplitude list")
    p.add_argument("--w", help="W(0) label, e.g. x1 (1-based qubit)")
    p.add_argument("--v", help="V label, e.g. z1")
    p.add_argument("--qubit", type=int, help="default 1-based qubit for bare labels")
    p.add_argument("--jz", type=float)
    p.add_argument("--b", type=float)
    p.add_argument("--coupling-multiplier", type=int, choices=(1, 2))
    p.add_argument("--field-multiplier", type=int, choices=(1, 2))
    p.add_argument("--method", help="exact or bch:N")
    p.add_argument("--t-min", type=float)
    p.add_argument("--t-max", type=float)
    p.add_argument("--steps", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--out", help="output path (default: stdout)")


def config_from_args(args: argparse.Namespace) -> ScanConfig:
    base = ScanConfig.from_json(args.config).to_dict() if args.config else {}
    params = dict(base.pop("params", {}) or {})
    for flag, key in _SCAN_FLAGS.items():
        value = getattr(args, flag, None)
        if value is not None:
            base[key] = value
    for flag, key in _PARAM_FLAGS.items():
        value = getattr(args, flag, None)
        if value is not None:
            params[key] = value
    base["params"] = params
    return ScanConfig.from_dict(base)


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    try:
        with open(out, "w") as fh:
            fh.write(text)
    except OSError as exc:
        raise ScanIOError(f"cannot write {out}: {exc.strerror or exc}") from exc


def cmd_verify(args) -> int:
    result = run_identity_suite(args.seed, args.samples, z_fault=args.inject_fault)
    for line in result.lines():
        print(line)
    print(f"{'PASS' if result.passed else 'FAIL'} {result.sample_count} samples, "
          f"seed {result.seed}, {result.runtime_s:.2f} s")
    return EXIT_OK if result.passed else EXIT_FAIL


def cmd_scan(args) -> int:
    config = config_from_args(args)
    samples = run_scan(config)
    if config.out is None:
        sys.stdout.write(format_csv(samples))
    else:
        write_csv(samples, config.out)
        if args.gnuplot:
            write_gnuplot(config.out, args.gnuplot, title=f"{config.state} {config.w}/{config.v}")
    return EXIT_OK


def _range(spec) -> np.ndarray:
    lo, hi, count = spec
    count = int(count)
    if count < 1:
        raise ConfigError(f"range count must be positive, got {count}")
    return np.linspace(float(lo), float(hi), count)


def cmd_sweep(args) -> int:
    config = config_from_args(args)
    jzs = _range(args.jz_range) if args.jz_range else np.array([config.params.j_z])
    bs = _range(args.b_range) if args.b_range else np.array([config.params.b])
    header = ("j_z,b,coupling_multiplier,field_multiplier,max_otoc_direct,min_fidelity,"
              "max_abs_im_z,fidelity_omega,fidelity_is_periodic,balancing_points")
    lines = [header]
    for jz in jzs:
        for b in bs:
            params = dataclasses.replace(config.params, j_z=float(jz), b=float(b))
            cell = dataclasses.replace(config, params=params)
            samples = run_scan(cell)
            t = cell.times()
            fid = np.array([s.f for s in samples])
            fit = fit_frequency(t, fid) if t.size >= 64 else None
            crossings = balancing_points(t, [s.c_direct for s in samples], [abs(s.z) for s in samples])
            lines.append(",".join([
                format(float(jz), ".17g"), format(float(b), ".17g"),
                str(params.coupling_multiplier), str(params.field_multiplier),
                format(max(s.c_direct for s in samples), ".17g"),
                format(float(fid.min()), ".17g"),
                format(max(abs(s.im_z) for s in samples), ".17g"),
                format(fit.fundamental_omega, ".17g") if fit else "nan",
                ("true" if fit.is_periodic else "false") if fit else "nan",
                str(len(crossings)),
            ]))
    _emit("\n".join(lines) + "\n", config.out)
    return EXIT_OK


def cmd_report(args) -> int:
    times = np.linspace(args.t_min, args.t_max, args.steps)
    states = [args.state] if args.state else None
    pairs = None
    if args.pair:
        pairs = []
        for p in args.pair:
            w, _, v = p.partition("/")
            pairs.append((w.strip().lower()[:1], v.strip().lower()[:1]))
    try:
        report = full_report(args.jz, args.b, times, states=states, pairs=pairs)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    if args.format == "json":
        text = json.dumps(report, indent=2) + "\n"
    else:
        text = format_text(report) + "\n"
    _emit(text, args.out)
    return EXIT_OK


def cmd_balance(args) -> int:
    if args.csv:
        samples = read_csv(args.csv)
        t = [s.t for s in samples]
        points = balancing_points(t, [s.c_direct for s in samples], [abs(s.z) for s in samples])
        refined = False
    else:
        config = config_from_args(args)
        points = scan_balancing_points(config)
        refined = True
    gaps = np.diff(points).tolist() if len(points) > 1 else []
    out = {"balancing_points": points, "gaps": gaps, "bisection_refined": refined}
    _emit(json.dumps(out, indent=2) + "\n", getattr(args, "out", None))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="scrambling", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="run the randomised identity suite")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--inject-fault", type=float, default=0.0,
                   help="perturb Z by this amount (detector sanity check)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("scan", help="time scan to CSV")
    _add_scan_flags(p)
    p.add_argument("--gnuplot", help="also write a gnuplot script (requires --out)")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("sweep", help="scan summary over a (j_z, b) grid")
    _add_scan_flags(p)
    p.add_argument("--jz-range", nargs=3, metavar=("MIN", "MAX", "COUNT"))
    p.add_argument("--b-range", nargs=3, metavar=("MIN", "MAX", "COUNT"))
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("report", help="compare Bell-state dynamics with the closed-form reference curves")
    # j_z != b by default: with j_z == b a doubled field mimics b + j_z
    p.add_argument("--jz", type=float, default=0.3)
    p.add_argument("--b", type=float, default=0.5)
    p.add_argument("--t-min", type=float, default=0.0)
    p.add_argument("--t-max", type=float, default=5.0)
    p.add_argument("--steps", type=int, default=201)
    p.add_argument("--state", help="restrict to one Bell state")
    p.add_argument("--pair", action="append", help="restrict to pairs like x/z (repeatable)")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--out")
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("balance", help="scrambling/concurrence balancing points")
    _add_scan_flags(p)
    p.add_argument("--csv", help="read an existing scan CSV instead of recomputing")
    p.set_defaults(func=cmd_balance)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ScanIOError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ConfigError, ValueError, IndexError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
