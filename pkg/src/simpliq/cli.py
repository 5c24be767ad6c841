"""Command-line interface: analyze, sweep, diagram, and witness.

Exit codes: 0 success, 1 usage error, 2 invalid machine input, 3 numeric
range failure.  Identical invocations produce byte-identical CSV/JSON
output; numbers in CSV carry 12 significant digits.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict

from . import render
from .ambiguity import ambiguity_grid, find_ambiguous_pair
from .classical import compute_profile
from .ising import IsingParams, TemperatureRangeError, ising_machine, temperature_sweep
from .machine import (
    ConvergenceError,
    InvalidMachineError,
    MachineFormatError,
    WordLengthError,
    load_machine,
)

__all__ = ["main"]

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INVALID_INPUT = 2
EXIT_RANGE = 3


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse with the documented usage exit code."""

    def error(self, message: str):
        raise _UsageError(message)


def _fmt(x) -> str:
    if x is None:
        return "nan"
    return f"{x:.12g}"


def _parse_ising(text: str) -> tuple[float, float]:
    parts = text.split(",")
    if len(parts) != 2:
        raise _UsageError(f"--ising expects J,b (got {text!r})")
    try:
        return float(parts[0]), float(parts[1])
    except ValueError:
        raise _UsageError(f"--ising expects numbers (got {text!r})") from None


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _require_format(fmt: str, allowed: tuple[str, ...]) -> None:
    if fmt not in allowed:
        raise _UsageError(f"format {fmt!r} not supported here (choose from {', '.join(allowed)})")


def _cmd_analyze(args) -> int:
    _require_format(args.format, ("json",))
    machine = load_machine(args.machine)
    profile = compute_profile(machine, encoding_length=args.L)
    if not profile.holevo_ok():
        sys.stderr.write("warning: profile violates E <= C_q <= C_mu beyond tolerance\n")
    record = {k: v for k, v in asdict(profile).items()}
    _emit(json.dumps(record, indent=2, sort_keys=True) + "\n", args.out)
    return EXIT_OK


def _sweep_rows(points):
    for pt in points:
        prof = pt.profile
        yield {
            "T": pt.temperature,
            "p": pt.p,
            "q": pt.q,
            "h_mu": prof.h_mu if prof else None,
            "C_mu": prof.C_mu if prof else None,
            "C_q": prof.C_q if prof else None,
            "E": prof.E if prof else None,
            "error": pt.error,
        }


def _cmd_sweep(args) -> int:
    _require_format(args.format, ("csv", "json", "svg"))
    coupling, field = _parse_ising(args.ising)
    if args.steps < 2:
        raise _UsageError("--steps must be at least 2")
    if not (0.0 < args.t_min < args.t_max):
        raise _UsageError("need 0 < --t-min < --t-max")
    points = temperature_sweep(
        coupling, field, args.t_min, args.t_max, args.steps, encoding_length=args.L
    )
    flagged = [pt.temperature for pt in points if pt.ok and not pt.profile.holevo_ok()]
    if flagged:
        sys.stderr.write(
            "warning: E <= C_q <= C_mu violated at T = "
            + ", ".join(_fmt(t) for t in flagged)
            + "\n"
        )
    for pt in points:
        if not pt.ok:
            sys.stderr.write(f"warning: point T = {_fmt(pt.temperature)} failed: {pt.error}\n")
    if args.format == "svg":
        _emit(render.sweep_svg(points), args.out)
    elif args.format == "json":
        _emit(json.dumps(list(_sweep_rows(points)), indent=2, sort_keys=True) + "\n", args.out)
    else:
        lines = ["T,p,q,h_mu,C_mu,C_q,E"]
        for row in _sweep_rows(points):
            lines.append(
                ",".join(_fmt(row[k]) for k in ("T", "p", "q", "h_mu", "C_mu", "C_q", "E"))
            )
        _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def _cmd_diagram(args) -> int:
    _require_format(args.format, ("csv", "svg"))
    coupling, field = _parse_ising(args.ising)
    if args.resolution < 16:
        raise _UsageError("--resolution must be at least 16")
    if args.t_max <= 0:
        raise _UsageError("--t-max must be positive")
    grid = ambiguity_grid(
        coupling,
        field,
        args.t_max,
        args.resolution,
        mode=args.mode,
        encoding_length=args.L,
        tol=args.tol,
    )
    if args.format == "svg":
        _emit(render.grid_svg(grid), args.out)
        return EXIT_OK
    lines = ["T1,T2,plain,certain"]
    for i, t1 in enumerate(grid.temperatures):
        for j, t2 in enumerate(grid.temperatures):
            v = grid.verdicts[i][j]
            lines.append(f"{_fmt(t1)},{_fmt(t2)},{v.plain.value},{v.certain.value}")
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def _cmd_witness(args) -> int:
    _require_format(args.format, ("json",))
    if bool(args.ising) == bool(args.machine):
        raise _UsageError("provide exactly one of --ising or --machine")
    labels: list[str] = []
    profiles = []
    if args.ising:
        coupling, field = _parse_ising(args.ising)
        if args.steps < 2:
            raise _UsageError("--steps must be at least 2")
        if not (0.0 < args.t_min < args.t_max):
            raise _UsageError("need 0 < --t-min < --t-max")
        h = (args.t_max - args.t_min) / (args.steps - 1)
        for i in range(args.steps):
            t = args.t_min + i * h
            params = IsingParams(coupling=coupling, field=field, temperature=t)
            profiles.append(compute_profile(ising_machine(params), encoding_length=args.L))
            labels.append(f"T={_fmt(t)}")
    else:
        for path in args.machine:
            profiles.append(compute_profile(load_machine(path), encoding_length=args.L))
            labels.append(path)
    hit = find_ambiguous_pair(profiles, lambda p: p.C_mu, lambda p: p.C_q)
    if hit is None:
        _emit(json.dumps({"found": False}, indent=2, sort_keys=True) + "\n", args.out)
        return EXIT_OK
    i, j = hit
    report = {
        "found": True,
        "first": {"label": labels[i], **asdict(profiles[i])},
        "second": {"label": labels[j], **asdict(profiles[j])},
    }
    _emit(json.dumps(report, indent=2, sort_keys=True) + "\n", args.out)
    return EXIT_OK


def _build_parser() -> _Parser:
    parser = _Parser(prog="simpliq", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p: _Parser, default_format: str) -> None:
        p.add_argument("--L", type=int, default=1, help="encoding length for C_q")
        p.add_argument("--out", default=None, help="output path (default stdout)")
        p.add_argument("--format", default=default_format, choices=("csv", "json", "svg"))
        p.add_argument("--tol", type=float, default=1e-10, help="tie tolerance for verdicts")

    p = sub.add_parser("analyze", help="full measure profile of a machine file")
    p.add_argument("--machine", required=True, help="machine JSON file")
    common(p, "json")
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("sweep", help="temperature sweep of the Ising family")
    p.add_argument("--ising", required=True, metavar="J,B")
    p.add_argument("--t-min", type=float, default=0.05, dest="t_min")
    p.add_argument("--t-max", type=float, default=5.0, dest="t_max")
    p.add_argument("--steps", type=int, default=1000)
    common(p, "csv")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("diagram", help="pairwise ambiguity diagram over (T1, T2)")
    p.add_argument("--ising", required=True, metavar="J,B")
    p.add_argument("--t-max", type=float, default=5.0, dest="t_max")
    p.add_argument("--resolution", type=int, default=250)
    p.add_argument("--mode", default="plain", choices=("plain", "certain"))
    common(p, "csv")
    p.set_defaults(func=_cmd_diagram)

    p = sub.add_parser("witness", help="search a family for an ambiguous pair")
    p.add_argument("--ising", default=None, metavar="J,B")
    p.add_argument("--machine", action="append", default=None, help="machine file (repeatable)")
    p.add_argument("--t-min", type=float, default=0.05, dest="t_min")
    p.add_argument("--t-max", type=float, default=5.0, dest="t_max")
    p.add_argument("--steps", type=int, default=100)
    common(p, "json")
    p.set_defaults(func=_cmd_witness)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except _UsageError as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    except WordLengthError as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    except (MachineFormatError, InvalidMachineError) as exc:
        sys.stderr.write(f"invalid machine: {exc}\n")
        if isinstance(exc, InvalidMachineError):
            for code, msg in exc.report.violations:
                sys.stderr.write(f"  {code}: {msg}\n")
        return EXIT_INVALID_INPUT
    except FileNotFoundError as exc:
        sys.stderr.write(f"invalid input: {exc}\n")
        return EXIT_INVALID_INPUT
    except (TemperatureRangeError, ConvergenceError) as exc:
        sys.stderr.write(f"numeric range failure: {exc}\n")
        return EXIT_RANGE


if __name__ == "__main__":
    sys.exit(main())
