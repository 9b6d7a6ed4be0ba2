"""Command line front end.

Each command prints one JSON document (or CSV with ``--csv``) on stdout.
Exit codes: 0 all checks pass, 1 a checked property is violated, 2 usage or
input error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import asdict
from pathlib import Path
from typing import Any, Sequence

from .errors import QuantreeError
from .experiments import build_paper_example, monotonicity, repro, solve_report, survey
from .graph import read_graph

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2


def _clean(obj: Any) -> Any:
    # JSON has no inf/nan
    if isinstance(obj, float) and not math.isfinite(obj):
        return None
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    return obj


def _emit_json(payload: Any) -> None:
    sys.stdout.write(json.dumps(_clean(payload), indent=2, sort_keys=True) + "\n")


def _emit_csv(rows: list[dict], columns: Sequence[str] | None = None) -> None:
    buf = io.StringIO()
    columns = list(columns or (rows[0].keys() if rows else []))
    writer = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n", extrasaction="ignore")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: repr(v) if isinstance(v, float) else v for k, v in row.items()})
    sys.stdout.write(buf.getvalue())


def _flat(d: dict) -> list[dict]:
    return [{"key": k, "value": v} for k, v in sorted(d.items()) if not isinstance(v, (dict, list))]


def cmd_solve(args: argparse.Namespace) -> int:
    g = read_graph(args.graph)
    out = solve_report(g, args.mu_max, args.extrema, with_functions=args.functions)
    if args.csv:
        _emit_csv(out["eigenvalues"], ["index", "mu", "k", "multiplicity"])
    else:
        _emit_json(out)
    return EXIT_OK


def cmd_repro(args: argparse.Namespace) -> int:
    rep = repro(args.epsilon)
    payload = rep.to_dict()
    if args.csv:
        _emit_csv(_flat(payload), ["key", "value"])
    else:
        _emit_json(payload)
    return EXIT_OK if rep.passed else EXIT_VIOLATION


def cmd_survey(args: argparse.Namespace) -> int:
    extra = [build_paper_example(0.05).Gamma] if args.inject_example else []
    result = survey(args.n, args.seed, args.max_edges, (args.lo, args.hi), extra=extra)
    records = [asdict(r) for r in result.records]
    if args.csv:
        _emit_csv(records)
    else:
        _emit_json({"records": records, "summary": result.summary()})
    return EXIT_OK if result.all_pass else EXIT_VIOLATION


def cmd_monotonicity(args: argparse.Namespace) -> int:
    g = read_graph(args.graph)
    rep = monotonicity(g, args.vertex, args.length)
    payload = asdict(rep)
    if args.csv:
        _emit_csv(_flat(payload), ["key", "value"])
    else:
        _emit_json(payload)
    return EXIT_OK if rep.consistent else EXIT_VIOLATION


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="quantree", description="Laplacian spectra and hot spots of metric trees")
    sub = parser.add_subparsers(dest="command", required=True)

    def fmt(p: argparse.ArgumentParser) -> None:
        group = p.add_mutually_exclusive_group()
        group.add_argument("--json", action="store_true", help="JSON output (default)")
        group.add_argument("--csv", action="store_true", help="CSV output")

    p = sub.add_parser("solve", help="eigenvalues of a graph file")
    p.add_argument("--graph", type=Path, required=True)
    p.add_argument("--mu-max", type=float, required=True)
    p.add_argument("--extrema", type=int, default=None, metavar="N", help="extremum report for eigenvalue N (1-based)")
    p.add_argument("--functions", action="store_true", help="include eigenfunction coefficients")
    fmt(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("repro", help="verify the path/star counterexample")
    p.add_argument("--epsilon", type=float, default=0.05)
    fmt(p)
    p.set_defaults(func=cmd_repro)

    p = sub.add_parser("survey", help="hot-spots check on random trees")
    p.add_argument("--n", type=int, default=200)
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--max-edges", type=int, default=12)
    p.add_argument("--lo", type=float, default=0.2, help="shortest edge length")
    p.add_argument("--hi", type=float, default=2.0, help="longest edge length")
    p.add_argument("--inject-example", action="store_true", help="append the counterexample tree at eps=0.05")
    fmt(p)
    p.set_defaults(func=cmd_survey)

    p = sub.add_parser("monotonicity", help="glue a pendant edge and compare mu_2")
    p.add_argument("--graph", type=Path, required=True)
    p.add_argument("--vertex", type=int, required=True)
    p.add_argument("--length", type=float, required=True)
    fmt(p)
    p.set_defaults(func=cmd_monotonicity)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (QuantreeError, OSError) as exc:
        print(f"quantree {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
