"""Command line front end.

Exit status: 0 on success, 1 when a scenario expectation fails, 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .bounds import bounds_report, finiteness_probe
from .enumeration import enumerate_walls, miniwalls_on_ray, verify_nesting
from .errors import StabWallsError
from .numerics import as_q, q_str
from .scenario import Scenario, bundled_scenarios, check_expectations, load_scenario, parse_witness
from .svg import PlotSpec, emit_svg
from .walls import wall_circle

EXIT_OK, EXIT_MISMATCH, EXIT_INPUT = 0, 1, 2


def _emit(payload, fmt: str, table_rows=None, out=None) -> None:
    out = out or sys.stdout
    if fmt == "json":
        json.dump(payload, out, indent=2, sort_keys=False)
        out.write("\n")
        return
    rows = table_rows(payload) if table_rows else _flatten(payload)
    width = max((len(k) for k, _ in rows), default=0)
    for k, val in rows:
        out.write(f"{k.ljust(width)}  {val}\n")


def _flatten(obj, prefix="") -> list:
    rows = []
    if isinstance(obj, dict):
        for k, val in obj.items():
            rows += _flatten(val, f"{prefix}.{k}" if prefix else str(k))
    elif isinstance(obj, list) and obj and all(isinstance(x, (dict, list)) for x in obj):
        for i, val in enumerate(obj):
            rows += _flatten(val, f"{prefix}[{i}]")
    else:
        rows.append((prefix, json.dumps(obj) if not isinstance(obj, str) else obj))
    return rows


def _wallset_rows(payload) -> list:
    rows = []
    for block in payload if isinstance(payload, list) else [payload]:
        rows.append(("u", block["u"]))
        for e in block["circles"]:
            ws = "; ".join(f"({w['rank']}, {w['c1']}, {w['ch2']})" for w in e["witnesses"])
            rows.append((f"  C={e['C']}", f"Rsq={e['Rsq']}  witnesses: {ws}"))
        for line in block["vertical_lines"]:
            rows.append((f"  line s={line['s']}", f"{len(line['witnesses'])} witnesses"))
        if not block["circles"]:
            rows.append(("  circles", "none"))
    return rows


def _slices(sc: Scenario, args) -> list:
    if getattr(args, "u", None) is not None:
        return [as_q(args.u)]
    return list(sc.slices)


def _one_or_many(items: list):
    return items[0] if len(items) == 1 else items


def cmd_bounds(args) -> int:
    sc = load_scenario(args.scenario)
    out = []
    for u in _slices(sc, args):
        rep = bounds_report(sc.character, u, sc.surface).to_json()
        if sc.character.x > 0:
            rep["finiteness"] = finiteness_probe(sc.character, u, sc.surface).to_json()
        out.append(rep)
    _emit(_one_or_many(out), args.format)
    return EXIT_OK


def cmd_wall(args) -> int:
    sc = load_scenario(args.scenario)
    w = parse_witness(sc.surface, args.witness, strict=sc.strict)
    out = [dict(wall_circle(sc.character, w, u, sc.surface).to_json(), u=q_str(u)) for u in _slices(sc, args)]
    _emit(_one_or_many(out), args.format)
    return EXIT_OK


def _wallsets(sc: Scenario, args) -> list:
    filters = sc.filters
    if args.rank_max is not None or args.radius_sq_min is not None or args.workers is not None:
        from dataclasses import replace

        kwargs = {}
        if args.rank_max is not None:
            kwargs["rank_max"] = args.rank_max
        if args.radius_sq_min is not None:
            kwargs["radius_sq_min"] = as_q(args.radius_sq_min)
        if args.workers is not None:
            kwargs["workers"] = args.workers
        filters = replace(filters, **kwargs)
    return [enumerate_walls(sc.character, u, sc.surface, filters) for u in _slices(sc, args)]


def cmd_enumerate(args) -> int:
    sc = load_scenario(args.scenario)
    out = [ws.to_json() for ws in _wallsets(sc, args)]
    _emit(_one_or_many(out), args.format, _wallset_rows)
    return EXIT_OK


def cmd_nesting(args) -> int:
    sc = load_scenario(args.scenario)
    out = []
    for ws in _wallsets(sc, args):
        rep = verify_nesting(ws).to_json()
        rep["u"] = q_str(ws.u)
        rep["circles"] = len(ws.circles)
        out.append(rep)
    _emit(_one_or_many(out), args.format)
    return EXIT_OK


def cmd_ray(args) -> int:
    sc = load_scenario(args.scenario)
    s0 = as_q(args.s)
    out = []
    for ws in _wallsets(sc, args):
        hits, lines = miniwalls_on_ray(ws, s0)
        out.append({"u": q_str(ws.u), "s": q_str(s0), "miniwalls": [h.to_json() for h in hits], "vertical_lines": [line.to_json() for line in lines]})
    _emit(_one_or_many(out), args.format)
    return EXIT_OK


def cmd_plot(args) -> int:
    sc = load_scenario(args.scenario)
    spec = PlotSpec(
        s_range=(as_q(args.s_min), as_q(args.s_max)) if args.s_min is not None and args.s_max is not None else None,
        mode=args.mode,
        title=sc.name,
    )
    svg = emit_svg(_wallsets(sc, args), spec)
    Path(args.out).write_text(svg)
    _emit({"out": str(args.out), "bytes": len(svg.encode())}, args.format)
    return EXIT_OK


def cmd_run_all(args) -> int:
    paths = sorted(Path(args.dir).glob("*.json")) if args.dir else bundled_scenarios()
    results, failed = [], 0
    for path in paths:
        sc = Scenario.from_json(json.loads(path.read_text()))
        checks = check_expectations(sc)
        bad = [c for c in checks if not c.ok]
        failed += bool(bad)
        results.append({"scenario": sc.name, "file": path.name, "checks": len(checks), "failed": [c.to_json() for c in bad]})
    payload = {"scenarios": results, "failed": failed}

    def rows(p):
        out = []
        for r in p["scenarios"]:
            status = "ok" if not r["failed"] else "FAIL " + ", ".join(f"{c['key']} ({c['detail']})" for c in r["failed"])
            out.append((r["scenario"], f"{r['checks']} checks  {status}"))
        return out

    _emit(payload, args.format, rows)
    return EXIT_MISMATCH if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="stabwalls", description="Exact walls of basic stability conditions on surfaces.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "table"), default="json")
    common.add_argument("--u", default=None, help="override the slice value(s) of the scenario")
    enum_opts = argparse.ArgumentParser(add_help=False)
    enum_opts.add_argument("--rank-max", type=int, default=None)
    enum_opts.add_argument("--radius-sq-min", default=None)
    enum_opts.add_argument("--workers", type=int, default=None)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bounds", parents=[common], help="bounds report")
    p.add_argument("scenario")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("wall", parents=[common], help="wall locus for one witness")
    p.add_argument("scenario")
    p.add_argument("--witness", required=True, help="r,c1,ch2 with c1 components separated by ';'")
    p.set_defaults(func=cmd_wall)

    p = sub.add_parser("enumerate", parents=[common, enum_opts], help="enumerate pseudo-walls")
    p.add_argument("scenario")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("nesting", parents=[common, enum_opts], help="check that enumerated walls are nested")
    p.add_argument("scenario")
    p.set_defaults(func=cmd_nesting)

    p = sub.add_parser("ray", parents=[common, enum_opts], help="mini-walls on a vertical ray")
    p.add_argument("scenario")
    p.add_argument("--s", required=True)
    p.set_defaults(func=cmd_ray)

    p = sub.add_parser("plot", parents=[common, enum_opts], help="write an SVG figure")
    p.add_argument("scenario")
    p.add_argument("--out", required=True)
    p.add_argument("--mode", choices=("slice", "parabola"), default="slice")
    p.add_argument("--s-min", default=None)
    p.add_argument("--s-max", default=None)
    p.set_defaults(func=cmd_plot)

    p = sub.add_parser("scenario", help="scenario fixtures")
    ssub = p.add_subparsers(dest="scenario_command", required=True)
    q = ssub.add_parser("run-all", parents=[common], help="check every bundled fixture")
    q.add_argument("--dir", default=None, help="directory of scenario files instead of the bundled set")
    q.set_defaults(func=cmd_run_all)
    return parser


def run_cli(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (StabWallsError, OSError, ValueError, TypeError, KeyError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT


def main() -> None:
    sys.exit(run_cli())
