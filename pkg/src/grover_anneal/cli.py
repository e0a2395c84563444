"""Command-line front end.

CSV outputs start with a ``#`` line holding the resolved configuration as
JSON, then a column header row.  JSON reports are single objects with
``config`` and ``result`` keys.  Exit codes: 0 success, 2 bad arguments,
3 numerical failure.
"""
from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import bounds, experiments, integrator, model
from .integrator import ConvergenceError, Mode
from .quadrature import QuadratureError
from .schedule import ScheduleKind, make_schedule

EXIT_ARGS = 2
EXIT_NUMERIC = 3


class UsageError(ValueError):
    pass


def fmt(x) -> str:
    if isinstance(x, (int, np.integer)) and not isinstance(x, bool):
        return str(int(x))
    return format(float(x), ".17g")


def write_csv(path, config: dict, header, rows) -> None:
    lines = ["# " + json.dumps(config, sort_keys=True), ",".join(header)]
    lines.extend(",".join(fmt(v) for v in row) for row in rows)
    text = "\n".join(lines) + "\n"
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w", newline="\n") as fh:
            fh.write(text)


def write_json(path, config: dict, result) -> None:
    text = json.dumps({"config": config, "result": result}, indent=2, sort_keys=True) + "\n"
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w", newline="\n") as fh:
            fh.write(text)


def parse_sizes(args) -> list[int]:
    if getattr(args, "n_exp", None):
        try:
            lo, hi = (int(x) for x in args.n_exp.split(":"))
        except ValueError:
            raise UsageError(f"--n-exp expects LO:HI, got {args.n_exp!r}") from None
        if lo > hi:
            raise UsageError("--n-exp needs LO <= HI")
        return [2 ** k for k in range(lo, hi + 1)]
    if getattr(args, "n", None):
        return list(args.n)
    raise UsageError("give problem sizes with --n or --n-exp")


def _float_list(text: str) -> list[float]:
    return [float(x) for x in text.split(",") if x]


def _check(cond: bool, message: str) -> None:
    if not cond:
        raise UsageError(message)


def validate(args) -> dict:
    """Check every numeric flag against its precondition; return the config."""
    config = {k: v for k, v in vars(args).items() if k not in ("func", "out", "json")}
    sizes = parse_sizes(args) if hasattr(args, "n_exp") else None
    if sizes is not None:
        config["sizes"] = sizes
    for n in sizes or ([args.n] if isinstance(getattr(args, "n", None), int) else []):
        _check(n >= 2, f"problem size must satisfy n >= 2, got {n}")
    if getattr(args, "tau", None) is not None:
        _check(math.isfinite(args.tau) and args.tau >= 0, f"--tau must be finite and >= 0, got {args.tau}")
    if getattr(args, "target", None) is not None:
        _check(0 < args.target < 1, f"--target must lie in (0, 1), got {args.target}")
    if getattr(args, "steps", None) is not None:
        _check(args.steps >= 1, f"--steps must be >= 1, got {args.steps}")
    if getattr(args, "stride", None) is not None:
        _check(args.stride >= 1, f"--stride must be >= 1, got {args.stride}")
    if getattr(args, "rel_tol", None) is not None:
        _check(args.rel_tol > 0, f"--rel-tol must be positive, got {args.rel_tol}")
    if getattr(args, "tau_cap", None) is not None:
        _check(args.tau_cap >= 1, f"--tau-cap must be >= 1, got {args.tau_cap}")
    if getattr(args, "delta", None) is not None:
        _check(args.delta > 0, f"--delta must be positive, got {args.delta}")
    if getattr(args, "points", None) is not None:
        _check(args.points >= 2, f"--points must be >= 2, got {args.points}")
    if getattr(args, "taus", None) is not None:
        _check(len(args.taus) >= 3 and all(t > 0 for t in args.taus), "--taus needs >= 3 positive values")
    if args.command == "scaling" or args.command == "compare":
        _check(len(sizes) >= 3, "need at least 3 problem sizes")
    if args.command == "validate":
        _check(args.n <= integrator.FULL_SPACE_CAP, f"--n must be <= {integrator.FULL_SPACE_CAP} for validate")
    if args.command == "bounds":
        _check(args.tau > 0, "--tau must be positive for bounds")
    return config


def cmd_evolve(args, config):
    schedule = make_schedule(args.schedule, args.n, args.tau)
    traj = integrator.evolve(args.n, schedule, args.mode, steps=args.steps,
                             stride=args.stride, certify=args.certify)
    config["resolved_steps"] = traj.steps
    write_csv(args.out, config, ["t", "s", "p_opt", "log_norm", "gap"], traj.rows())


def cmd_gap(args, config):
    rows = []
    for s in np.linspace(0.0, 1.0, args.points):
        sd = model.spectral_data(args.n, float(s))
        rows.append((sd.s, sd.eps0, sd.eps1, sd.gap, sd.p_coeff, sd.q_coeff))
    write_csv(args.out, config, ["s", "eps0", "eps1", "gap", "p_coeff", "q_coeff"], rows)


def cmd_scan(args, config):
    res = experiments.scan_tau(args.n, args.target, args.mode, args.schedule, args.rel_tol, args.tau_cap)
    write_json(args.json, config, res.to_dict())


def cmd_scaling(args, config):
    scans = experiments.scan_many(config["sizes"], args.target, args.mode, args.schedule,
                                  args.rel_tol, args.workers)
    fit = experiments.fit_log_linear([s.n for s in scans], [s.tau for s in scans])
    if args.out:
        write_csv(args.out, config, ["n", "log_n", "tau_star", "monotone_bracket"],
                  [(s.n, math.log(s.n), s.tau, int(s.monotone_bracket)) for s in scans])
    write_json(args.json, config, fit.to_dict())


def cmd_asymptote(args, config):
    fit = experiments.asymptotic_slope(args.n, args.taus, args.mode, args.schedule, args.workers)
    write_json(args.json, config, fit.to_dict())


def cmd_compare(args, config):
    comp = experiments.schedule_comparison(config["sizes"], args.target, args.rel_tol, args.workers)
    if args.out:
        write_csv(args.out, config,
                  ["n", "tau_it_linear", "tau_it_adiabatic", "tau_rt_adiabatic"], comp.rows)
    write_json(args.json, config, comp.to_dict())


def cmd_bounds(args, config):
    report = bounds.bound_report(args.n, args.tau, args.delta)
    write_json(args.json, config, report.to_dict())


def cmd_validate(args, config):
    schedule = make_schedule(args.schedule, args.n, args.tau)
    p_full = integrator.evolve_full(args.n, schedule, args.mode, steps=args.steps)
    p_2d = integrator.final_probability(args.n, schedule, args.mode, steps=args.steps, certify=False)
    write_json(args.json, config, {"p_full": p_full, "p_reduced": p_2d, "abs_diff": abs(p_full - p_2d)})


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="grover-anneal",
        description="Real- and imaginary-time quantum annealing of Grover's search.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, *, mode=True, schedule=True, out=False, json_out=True):
        if mode:
            p.add_argument("--mode", choices=[m.value for m in Mode], default="it")
        if schedule:
            p.add_argument("--schedule", choices=[k.value for k in ScheduleKind], default="linear")
        if out:
            p.add_argument("--out", default=None, help="CSV output path (default: stdout)")
        if json_out:
            p.add_argument("--json", default=None, help="JSON output path (default: stdout)")

    def sizes(p):
        g = p.add_mutually_exclusive_group(required=True)
        g.add_argument("--n", type=int, nargs="+", help="problem sizes")
        g.add_argument("--n-exp", help="powers of two LO:HI, e.g. 4:20")
        p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("evolve", help="one trajectory to CSV")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--tau", type=float, required=True)
    p.add_argument("--steps", type=int, default=None)
    p.add_argument("--stride", type=int, default=1)
    p.add_argument("--certify", action="store_true", help="halve the step until P converges")
    common(p, out=True, json_out=False)
    p.set_defaults(func=cmd_evolve)

    p = sub.add_parser("gap", help="spectral sweep over s to CSV")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--points", type=int, default=1001)
    common(p, mode=False, schedule=False, out=True, json_out=False)
    p.set_defaults(func=cmd_gap)

    p = sub.add_parser("scan", help="smallest tau reaching the target probability")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--target", type=float, default=0.99)
    p.add_argument("--rel-tol", type=float, default=1e-3)
    p.add_argument("--tau-cap", type=float, default=experiments.TAU_CAP,
                   help="give up when doubling tau passes this value")
    common(p)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("scaling", help="fit tau* = a ln N + b")
    sizes(p)
    p.add_argument("--target", type=float, default=0.99)
    p.add_argument("--rel-tol", type=float, default=1e-3)
    common(p, out=True)
    p.set_defaults(func=cmd_scaling)

    p = sub.add_parser("asymptote", help="power-law exponent of 1 - P(tau)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--taus", type=_float_list, default=[200.0, 400.0, 800.0, 1600.0])
    p.add_argument("--workers", type=int, default=1)
    common(p)
    p.set_defaults(func=cmd_asymptote)

    p = sub.add_parser("compare", help="linear vs local-adiabatic schedules")
    sizes(p)
    p.add_argument("--target", type=float, default=0.99)
    p.add_argument("--rel-tol", type=float, default=1e-3)
    common(p, mode=False, schedule=False, out=True)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("bounds", help="closed-form bounds report")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--tau", type=float, required=True)
    p.add_argument("--delta", type=float, default=0.1)
    common(p, mode=False, schedule=False)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("validate", help="full-space vs reduced dynamics")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--tau", type=float, required=True)
    p.add_argument("--steps", type=int, default=None)
    common(p)
    p.set_defaults(func=cmd_validate)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        config = validate(args)
    except UsageError as exc:
        print(f"grover-anneal {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_ARGS
    try:
        args.func(args, config)
    except (experiments.BracketError, QuadratureError, ConvergenceError) as exc:
        print(f"grover-anneal {args.command}: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ValueError as exc:
        print(f"grover-anneal {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_ARGS
    return 0


def main() -> None:
    sys.exit(run())
