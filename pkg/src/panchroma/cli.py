"""Command-line interface.

Exit codes: 0 success, 1 proven negative (no panchromatic coloring /
property fails), 2 budget exhausted or undecided, 64 malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import bounds as bounds_mod
from . import colorers, constructions
from .experiment import ExperimentSpec, run_experiment
from .hypercore import (
    OracleBudgetExceeded,
    exact_panchromatic_decision,
    is_panchromatic,
    load_coloring,
    load_hypergraph,
    turan_property,
)

EXIT_OK, EXIT_NEGATIVE, EXIT_UNDECIDED, EXIT_USAGE = 0, 1, 2, 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).parent.mkdir(parents=True, exist_ok=True)
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _sidecar(out: str | None, suffix: str, payload: dict) -> None:
    text = json.dumps(payload, indent=1) + "\n"
    if out:
        Path(out).with_suffix(suffix).write_text(text)
    else:
        sys.stderr.write(text)


def _int_range(spec: str) -> list[int]:
    vals: list[int] = []
    for part in spec.split(","):
        if ":" in part:
            lo, hi = part.split(":")
            vals.extend(range(int(lo), int(hi) + 1))
        else:
            vals.append(int(part))
    return vals


def _constants(pairs: list[str]) -> dict[str, float]:
    out = {}
    for p in pairs or []:
        if "=" not in p:
            raise UsageError(f"constant {p!r} is not key=value")
        k, v = p.split("=", 1)
        out[k.strip()] = float(v)
    return out


# -- commands -----------------------------------------------------------------

def cmd_construct(args) -> int:
    provenance: dict = {"command": "construct", "kind": args.kind, "seed": args.seed}
    if args.kind == "thm5":
        p = constructions.ShiftParams(args.n, args.r, args.t)
        H = constructions.shift_construction(p, args.raw_edge_budget)
        provenance.update(n=args.n, r=args.r, t=args.t, k=p.k, raw_edges=p.raw_edge_count)
    elif args.kind == "blowup":
        base = load_hypergraph(args.input)
        H = constructions.blowup(base, args.m)
        provenance.update(input=args.input, m=args.m)
    elif args.kind == "random-turan":
        if args.las_vegas:
            try:
                res = constructions.las_vegas_turan(args.n, args.r, args.num_vertices, args.m,
                                                    seed=args.seed, max_attempts=args.max_attempts)
            except constructions.LasVegasFailure as exc:
                _sidecar(args.out, ".provenance.json",
                         {**provenance, "failed": True, "attempts": exc.attempts})
                print(f"error: {exc}", file=sys.stderr)
                return EXIT_UNDECIDED
            H = res.hypergraph
            provenance.update(attempts=res.attempts, attempt_seed=res.seed)
        else:
            H = constructions.random_turan(args.n, args.r, args.num_vertices, args.m, seed=args.seed)
        provenance.update(n=args.n, r=args.r, num_vertices=H.num_vertices,
                          draws=args.m if args.m is not None else constructions.random_turan_draws(args.n, args.r),
                          las_vegas=args.las_vegas)
    else:
        try:
            res = constructions.corollary_pipeline(args.n, args.r, args.k, seed=args.seed,
                                                   num_vertices=args.num_vertices,
                                                   max_attempts=args.max_attempts)
        except constructions.LasVegasFailure as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_UNDECIDED
        H = res.hypergraph
        provenance["steps"] = res.provenance
    _emit(json.dumps(H.to_dict()) + "\n", args.out)
    _sidecar(args.out, ".provenance.json", provenance)
    return EXIT_OK


def cmd_color(args) -> int:
    H = load_hypergraph(args.hypergraph)
    try:
        if args.method == "greedy":
            out = colorers.greedy(H, args.r)
        elif args.method == "alteration":
            out = colorers.alteration(H, args.r, seed=args.seed, max_attempts=args.max_attempts,
                                      palette=args.palette)
        elif args.method == "simplex":
            out = colorers.simplex(H, args.r, palette=args.palette, seed=args.seed,
                                   max_attempts=args.max_attempts)
        else:
            out = colorers.exact(H, args.r, args.node_budget)
    except OracleBudgetExceeded as exc:
        _sidecar(args.out, ".stats.json", {"method": args.method, "success": False,
                                           "reason": str(exc)})
        return EXIT_UNDECIDED
    stats = out.to_dict()
    if not args.full_stats:
        stats["stats"] = stats["stats"][-1:]
    _sidecar(args.out, ".stats.json", stats)
    if out.success:
        _emit(json.dumps(out.coloring.to_dict()) + "\n", args.out)
        return EXIT_OK
    if out.reason == "impossible":
        print("no panchromatic coloring", file=sys.stderr)
        return EXIT_NEGATIVE
    print(f"undecided: {out.reason}", file=sys.stderr)
    return EXIT_UNDECIDED


def cmd_verify(args) -> int:
    H = load_hypergraph(args.hypergraph)
    if args.coloring:
        c = load_coloring(args.coloring)
        if args.r is not None and c.num_colors != args.r:
            raise UsageError(f"coloring uses r={c.num_colors}, --r says {args.r}")
        ok, v = is_panchromatic(H, c)
        result = {"check": "panchromatic", "result": ok}
        if v is not None:
            result["violation"] = {"edge_index": v.edge_index, "edge": list(H.edges[v.edge_index]),
                                   "missing_color": v.missing_color}
        code = EXIT_OK if ok else EXIT_NEGATIVE
    elif args.turan:
        ok = turan_property(H, args.r)
        result = {"check": "turan", "r": args.r, "result": ok}
        code = EXIT_OK if ok else EXIT_NEGATIVE
    else:
        try:
            c = exact_panchromatic_decision(H, args.r, args.node_budget)
        except OracleBudgetExceeded as exc:
            _emit(json.dumps({"check": "exact", "r": args.r, "result": "undecided",
                              "nodes": exc.nodes}) + "\n", args.out)
            return EXIT_UNDECIDED
        if c is None:
            result = {"check": "exact", "r": args.r, "result": "none",
                      "message": "no panchromatic coloring"}
            code = EXIT_NEGATIVE
        else:
            result = {"check": "exact", "r": args.r, "result": "colorable", "coloring": c.to_dict()}
            code = EXIT_OK
    _emit(json.dumps(result) + "\n", args.out)
    return code


def cmd_bounds(args) -> int:
    cells = bounds_mod.grid(_int_range(args.n_range), _int_range(args.r_range))
    if not cells:
        raise UsageError("grid has no cell with 2 <= r <= n")
    reports = bounds_mod.bounds_table(cells, _constants(args.constants))
    fmt = args.format or "csv"
    text = bounds_mod.table_to_csv(reports) if fmt == "csv" else bounds_mod.table_to_json(reports) + "\n"
    _emit(text, args.out)
    plot = args.plot or (Path(args.out).with_suffix(".png") if args.out and not args.no_plot else None)
    if plot:
        from .plotting import plot_bounds

        plot_bounds(reports, plot)
    return EXIT_OK


def cmd_experiment(args) -> int:
    params = {"n": args.n}
    if args.family == "random":
        if args.num_vertices is None or args.edges is None:
            raise UsageError("family 'random' needs --num-vertices and --edges")
        params.update(num_vertices=args.num_vertices, num_edges=args.edges)
    elif args.family == "thm5":
        params.update(r=args.family_r or args.r, t=args.t)
    else:
        params.update(num_vertices=args.num_vertices or args.n)
    spec = ExperimentSpec(method=args.method, r=args.r, family=args.family, family_params=params,
                          trials=args.trials, seed=args.seed, max_attempts=args.max_attempts,
                          node_budget=args.node_budget, palette=args.palette)
    report = run_experiment(spec, workers=args.workers)
    if (args.format or "csv") == "json":
        _emit(json.dumps({"rows": report.rows, **report.aggregate()}, indent=1) + "\n", args.out)
    else:
        _emit(report.to_csv(), args.out)
        _sidecar(args.out, ".summary.json", report.aggregate())
    if args.out and not args.no_plot:
        from .plotting import plot_experiment

        plot_experiment(report, Path(args.out).with_suffix(".png"))
    return EXIT_OK


# -- parser -------------------------------------------------------------------

def _global_flags(parser: argparse.ArgumentParser, suppress: bool) -> None:
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--seed", type=int, default=d(0), help="base 64-bit seed")
    parser.add_argument("--out", default=d(None), help="output path (default stdout)")
    parser.add_argument("--format", choices=("csv", "json"), default=d(None))


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="panchroma", description="Panchromatic hypergraph coloring toolkit")
    _global_flags(p, suppress=False)
    common = _Parser(add_help=False)
    _global_flags(common, suppress=True)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    con = sub.add_parser("construct", help="build witness hypergraphs")
    csub = con.add_subparsers(dest="kind", required=True, parser_class=_Parser)
    t5 = csub.add_parser("thm5", parents=[common], help="explicit shift construction")
    t5.add_argument("--n", type=int, required=True)
    t5.add_argument("--r", type=int, required=True)
    t5.add_argument("--t", type=int, default=1)
    t5.add_argument("--raw-edge-budget", type=int, default=constructions.DEFAULT_RAW_EDGE_BUDGET)
    bu = csub.add_parser("blowup", parents=[common], help="replace vertices by blocks")
    bu.add_argument("--input", required=True)
    bu.add_argument("--m", type=int, required=True)
    rt = csub.add_parser("random-turan", parents=[common], help="random Turan system")
    rt.add_argument("--n", type=int, required=True)
    rt.add_argument("--r", type=int, required=True)
    rt.add_argument("--num-vertices", type=int)
    rt.add_argument("--m", type=int, help="number of draws (default: n^2 ln r / r * (r/(r-1))^n, c=1)")
    rt.add_argument("--las-vegas", action="store_true", help="resample until the property holds")
    rt.add_argument("--max-attempts", type=int, default=constructions.DEFAULT_LAS_VEGAS_ATTEMPTS)
    co = csub.add_parser("corollary", parents=[common], help="chain Turan system, blow-up, shrink")
    co.add_argument("--n", type=int, required=True)
    co.add_argument("--r", type=int, required=True)
    co.add_argument("--k", type=int, required=True)
    co.add_argument("--num-vertices", type=int)
    co.add_argument("--max-attempts", type=int, default=constructions.DEFAULT_LAS_VEGAS_ATTEMPTS)
    con.set_defaults(func=cmd_construct)

    col = sub.add_parser("color", parents=[common], help="find a panchromatic coloring")
    col.add_argument("hypergraph")
    col.add_argument("--method", choices=colorers.METHODS, default="exact")
    col.add_argument("--r", type=int, required=True)
    col.add_argument("--palette", type=int)
    col.add_argument("--max-attempts", type=int, default=colorers.DEFAULT_MAX_ATTEMPTS)
    col.add_argument("--node-budget", type=int)
    col.add_argument("--full-stats", action="store_true", help="keep per-attempt statistics")
    col.set_defaults(func=cmd_color)

    ver = sub.add_parser("verify", parents=[common], help="check a coloring or a property")
    ver.add_argument("hypergraph")
    mode = ver.add_mutually_exclusive_group(required=True)
    mode.add_argument("--coloring", help="coloring file to check for panchromaticity")
    mode.add_argument("--turan", action="store_true", help="check the Turan property for --r")
    mode.add_argument("--exact", action="store_true", help="decide colorability exactly")
    ver.add_argument("--r", type=int)
    ver.add_argument("--node-budget", type=int)
    ver.set_defaults(func=cmd_verify)

    bo = sub.add_parser("bounds", parents=[common], help="evaluate bounds on a grid")
    bo.add_argument("--n-range", default="2:20")
    bo.add_argument("--r-range", default="2:20")
    bo.add_argument("--constants", nargs="*", default=[], metavar="KEY=VALUE")
    bo.add_argument("--plot", help="figure path (default: next to --out)")
    bo.add_argument("--no-plot", action="store_true")
    bo.set_defaults(func=cmd_bounds)

    ex = sub.add_parser("experiment", parents=[common], help="seeded batch of colorer trials")
    ex.add_argument("--method", choices=colorers.METHODS, required=True)
    ex.add_argument("--r", type=int, required=True)
    ex.add_argument("--family", choices=("random", "thm5", "empty"), default="random")
    ex.add_argument("--n", type=int, required=True)
    ex.add_argument("--num-vertices", type=int)
    ex.add_argument("--edges", type=int)
    ex.add_argument("--t", type=int, default=1)
    ex.add_argument("--family-r", type=int, help="r of the thm5 family (default --r)")
    ex.add_argument("--trials", type=int, default=100)
    ex.add_argument("--palette", type=int)
    ex.add_argument("--max-attempts", type=int, default=colorers.DEFAULT_MAX_ATTEMPTS)
    ex.add_argument("--node-budget", type=int)
    ex.add_argument("--workers", type=int, default=1)
    ex.add_argument("--no-plot", action="store_true")
    ex.set_defaults(func=cmd_experiment)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "verify" and (args.turan or args.exact) and args.r is None:
        print("panchroma: error: --r is required with --turan/--exact", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except (UsageError, ValueError, KeyError, TypeError, FileNotFoundError) as exc:
        print(f"panchroma: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
