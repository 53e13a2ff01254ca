"""Command-line front end: scenario sweeps to CSV/JSON, verification runner.

Exit codes: 0 success, 1 invalid invocation or unwritable output,
2 verification failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys

from . import __version__
from .scenarios import (
    SCENARIO_IDS,
    SCENARIOS,
    ScenarioConfig,
    invariant_report,
    oracle_report,
    run_sweep,
)

_ORACLE_TOL = 1e-10
_INVARIANT_TOL = 1e-10


class _CliError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse defaults to exit code 2
        raise _CliError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="icoswitch", description=__doc__)
    sub = parser.add_subparsers(dest="subcommand", required=True)

    run = sub.add_parser("scenario", help="sweep a scenario over a parameter grid")
    run.add_argument("scenario_id", choices=SCENARIO_IDS, metavar="scenario_id")
    run.add_argument(
        "--grid",
        action="append",
        default=[],
        metavar="name=min:max:count|name=value",
        help="sweep axis (repeatable); endpoints are inclusive, singular "
        "endpoints are nudged inward by 1e-9 and flagged in the warning column",
    )
    run.add_argument("--dim", type=int, help="probe dimension d")
    run.add_argument("--two-j", type=int, dest="two_j", help="probe spin as 2j (d = 2j+1)")
    run.add_argument("--axis", metavar="THETA,PHI", help="unitary/dephasing axis angles")
    run.add_argument("--sink", choices=("ground", "excited"), help="damping sink state")
    run.add_argument("--copies", type=int, help="number of channel copies D")
    run.add_argument("--povm", choices=("pm", "pm+imag"), default="pm")
    run.add_argument("--threads", type=int, default=None)
    run.add_argument("--out", default="-", help="output path (default: stdout)")
    run.add_argument("--format", choices=("csv", "json"), default="csv")
    run.add_argument("--seed", type=int, default=0)

    verify = sub.add_parser("verify", help="run the oracle-equivalence and invariant suites")
    verify.add_argument("--seed", type=int, default=0)
    verify.add_argument("--draws", type=int, default=50)

    sub.add_parser("list", help="print scenario ids and parameter schemas")
    return parser


def _parse_grid(flags: list[str]) -> dict:
    grid: dict[str, object] = {}
    for flag in flags:
        if "=" not in flag:
            raise _CliError(f"bad --grid flag (expected name=...): {flag!r}")
        name, _, spec = flag.partition("=")
        name = name.strip()
        if ":" in spec:
            parts = spec.split(":")
            if len(parts) != 3:
                raise _CliError(f"bad --grid range (expected min:max:count): {flag!r}")
            try:
                lo, hi, count = float(parts[0]), float(parts[1]), int(parts[2])
            except ValueError as exc:
                raise _CliError(f"bad --grid range {flag!r}: {exc}") from exc
            grid[name] = (lo, hi, count)
        else:
            try:
                grid[name] = float(spec)
            except ValueError as exc:
                raise _CliError(f"bad --grid value {flag!r}: {exc}") from exc
    return grid


def _config_from_args(args) -> ScenarioConfig:
    scenario = SCENARIOS[args.scenario_id]
    grid = _parse_grid(args.grid)
    fixed: dict[str, object] = {}

    if args.dim is not None and args.two_j is not None:
        raise _CliError("--dim and --two-j are mutually exclusive")
    if args.dim is not None:
        fixed["d"] = args.dim
    if args.two_j is not None:
        fixed["d"] = args.two_j + 1
    if args.copies is not None:
        fixed["D"] = args.copies
    if args.sink is not None:
        fixed["sink"] = args.sink
    if args.axis is not None:
        try:
            big_theta, big_phi = (float(x) for x in args.axis.split(","))
        except ValueError as exc:
            raise _CliError(f"bad --axis (expected THETA,PHI): {args.axis!r}") from exc
        if "axis_Theta" in scenario.all_params:
            fixed["axis_Theta"], fixed["axis_Phi"] = big_theta, big_phi
        elif "Theta" in scenario.all_params:
            fixed["Theta"], fixed["Phi"] = big_theta, big_phi
        else:
            raise _CliError(f"{args.scenario_id} takes no axis flags")

    allowed = set(scenario.all_params)
    for name in list(grid) + list(fixed):
        if name not in allowed:
            raise _CliError(
                f"parameter {name!r} not in {args.scenario_id} schema "
                f"(allowed: {', '.join(scenario.all_params)})"
            )
    threads = args.threads if args.threads is not None else os.cpu_count() or 1
    try:
        return ScenarioConfig(
            args.scenario_id, grid=grid, fixed=fixed, povm=args.povm, threads=threads
        )
    except ValueError as exc:
        raise _CliError(str(exc)) from exc


def _format_cell(value) -> str:
    if isinstance(value, bool):
        return str(int(value))
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        return f"{value:.17g}"
    return str(value)


def _fieldnames(rows: list[dict]) -> list[str]:
    names: dict[str, None] = {}
    for row in rows:
        for key in row:
            names.setdefault(key)
    return list(names)


def _write_csv(rows: list[dict], stream) -> None:
    fields = _fieldnames(rows)
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(fields)
    for row in rows:
        writer.writerow([_format_cell(row.get(name, math.nan)) for name in fields])


def _write_json(rows: list[dict], config: ScenarioConfig, seed: int, stream) -> None:
    def clean(value):
        if isinstance(value, float) and math.isnan(value):
            return None
        return value

    payload = {
        "metadata": {
            "scenario": config.scenario_id,
            "config": {
                "grid": {k: list(v) if isinstance(v, tuple) else v for k, v in config.grid.items()},
                "fixed": dict(config.fixed),
                "povm": config.povm,
            },
            "version": __version__,
            "seed": seed,
        },
        "rows": [{k: clean(v) for k, v in row.items()} for row in rows],
    }
    json.dump(payload, stream, indent=2)
    stream.write("\n")


def _cmd_scenario(args) -> int:
    config = _config_from_args(args)
    rows = run_sweep(config)
    try:
        stream = sys.stdout if args.out == "-" else open(args.out, "w", newline="")
    except OSError as exc:
        print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
        return 1
    try:
        if args.format == "csv":
            _write_csv(rows, stream)
        else:
            _write_json(rows, config, args.seed, stream)
    finally:
        if stream is not sys.stdout:
            stream.close()
    return 0


def _cmd_verify(args) -> int:
    failed = False
    print(f"oracle equivalence (seed={args.seed}, draws={args.draws}):")
    for scenario_id, dev in oracle_report(seed=args.seed, draws=args.draws):
        ok = dev < _ORACLE_TOL
        failed |= not ok
        print(f"  {'PASS' if ok else 'FAIL'}  {scenario_id:22s} max |closed form - brute| = {dev:.3e}")
    print(f"control-state invariants (seed={args.seed}):")
    for scenario_id, dev in invariant_report(seed=args.seed):
        ok = dev < _INVARIANT_TOL
        failed |= not ok
        print(f"  {'PASS' if ok else 'FAIL'}  {scenario_id:22s} max violation = {dev:.3e}")
    print("verification:", "FAIL" if failed else "PASS")
    return 2 if failed else 0


def _cmd_list() -> int:
    for scenario_id in SCENARIO_IDS:
        scenario = SCENARIOS[scenario_id]
        schema = ", ".join(
            f"{name}={scenario.defaults[name]!r}" if name in scenario.defaults else name
            for name in scenario.all_params
        )
        print(f"{scenario_id}: {schema}")
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if args.subcommand == "scenario":
            return _cmd_scenario(args)
        if args.subcommand == "verify":
            return _cmd_verify(args)
        return _cmd_list()
    except _CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
