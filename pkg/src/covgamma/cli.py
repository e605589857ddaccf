"""Command-line entry point: ``covgamma verify|lower|table|nodes|search``.

Exit codes: 0 success / certified, 1 bad input or I/O error, 2 negative or
inconclusive verdict (verify: not covered), 3 verify ran out of budget.
"""

import argparse
import json
import os
import sys
from pathlib import Path

from .certifier import (COVERED, DEFAULT_CELL_BUDGET, NOT_COVERED, config_from_json,
                        verify_covering)
from .configs import (catalog, catalog_entry, complete_by_symmetry,
                      gamma_table, local_search_upper, table_csv)
from .exact import fmt, fmt_vec, parse_rational
from .manifest import dumps, envelope, make_manifest
from .polytope import facets_of_cross_polytope
from .witness import (DEFAULT_NODE_BUDGET, NODES, build_witness_set, certify_lower_bound,
                      certify_with_enrichment, node_midpoints, node_points,
                      parse_generators)

EXIT_OK, EXIT_ERROR, EXIT_NEGATIVE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad flags; 2 means "negative verdict" here
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _rational(s):
    try:
        return parse_rational(s)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e))


def _env_budget(default: int) -> int:
    raw = os.environ.get("COVGAMMA_BUDGET")
    if not raw:
        return default
    try:
        b = int(raw)
    except ValueError:
        raise UsageError(f"COVGAMMA_BUDGET must be an integer, got {raw!r}")
    if b < 1:
        raise UsageError("COVGAMMA_BUDGET must be positive")
    return b


def _emit(doc, out):
    text = dumps(doc)
    if out:
        Path(out).write_text(text)
    sys.stdout.write(text)


def cmd_verify(args) -> int:
    budget = args.budget or _env_budget(DEFAULT_CELL_BUDGET)
    if bool(args.config) == bool(args.catalog):
        raise UsageError("give exactly one of CONFIG or --catalog")
    if args.catalog:
        try:
            cfg = catalog_entry(args.catalog).config()
        except KeyError as e:
            raise UsageError(str(e.args[0]))
        inputs = {"catalog": args.catalog}
    else:
        try:
            raw = json.loads(Path(args.config).read_text())
        except OSError as e:
            raise UsageError(f"cannot read {args.config}: {e.strerror}")
        except json.JSONDecodeError as e:
            raise UsageError(f"{args.config}: invalid JSON ({e.msg})")
        try:
            cfg = config_from_json(raw)
        except (ValueError, TypeError) as e:
            raise UsageError(f"{args.config}: {e}")
        inputs = {"config": raw}
    if args.lam is not None:
        cfg = cfg.with_lambda(args.lam)
        inputs["lambda"] = fmt(args.lam)
    res = verify_covering(cfg, budget)
    doc = envelope("coverage", {"config": cfg.to_json(), "verdict": res.to_json()},
                   make_manifest("verify", inputs, {"cells": budget}))
    _emit(doc, args.out)
    return {COVERED: EXIT_OK, NOT_COVERED: EXIT_NEGATIVE}.get(res.status, EXIT_BUDGET)


def cmd_lower(args) -> int:
    budget = args.budget or _env_budget(DEFAULT_NODE_BUDGET)
    if args.m < 1:
        raise UsageError("--m must be positive")
    try:
        gens = parse_generators(args.witness)
    except ValueError as e:
        raise UsageError(str(e))
    node_lam = args.node_lambda if args.node_lambda is not None else args.lam
    needs_nodes = any(g in (NODES, "midpoints") for g in gens)
    try:
        W = build_witness_set(gens, node_lam if needs_nodes else None)
    except ValueError as e:
        raise UsageError(str(e))
    if args.enrich:
        v = certify_with_enrichment(args.m, args.lam, W, budget)
    else:
        v = certify_lower_bound(args.m, args.lam, W, budget)
    inputs = {"m": args.m, "lambda": fmt(args.lam), "witness": gens,
              "node_lambda": fmt(node_lam) if needs_nodes else None, "enrich": args.enrich}
    doc = envelope("lower_bound", {"verdict": v.to_json()},
                   make_manifest("lower", inputs, {"nodes": budget}))
    _emit(doc, args.out)
    return EXIT_OK if v.certified else EXIT_NEGATIVE


def cmd_table(args) -> int:
    node_budget = args.budget or _env_budget(DEFAULT_NODE_BUDGET)
    cell_budget = args.cell_budget or _env_budget(DEFAULT_CELL_BUDGET)
    if not 1 <= args.m_min <= args.m_max:
        raise UsageError("need 1 <= --m-min <= --m-max")
    rows = gamma_table(args.m_min, args.m_max, node_budget, cell_budget,
                       args.descent_steps, args.jobs)
    manifest = make_manifest("table", {"m_min": args.m_min, "m_max": args.m_max,
                                       "descent_steps": args.descent_steps},
                             {"nodes": node_budget, "cells": cell_budget})
    doc = envelope("gamma_table", {"rows": [r.to_json() for r in rows]}, manifest)
    out = Path(args.out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
        (out / "gamma_table.json").write_text(dumps(doc))
        csv = "# " + json.dumps(manifest, sort_keys=True) + "\n" + table_csv(rows)
        (out / "gamma_table.csv").write_text(csv)
    except OSError as e:
        print(f"error: cannot write table: {e}", file=sys.stderr)
        return EXIT_ERROR
    sys.stdout.write(table_csv(rows))
    return EXIT_OK


def cmd_nodes(args) -> int:
    lam = args.lam
    if not (parse_rational("1/2") <= lam < 1):
        raise UsageError(f"--lambda must lie in [1/2, 1), got {fmt(lam)}")
    points, mids, seen, seen_m = [], [], {}, set()
    for f in facets_of_cross_polytope():
        for k, p in enumerate(node_points(f, lam)):
            if p in seen:
                continue
            seen[p] = True
            points.append({"label": f"N{f.label}.{k}", "facet": f.label, "point": fmt_vec(p)})
        if args.midpoints:
            for k, p in enumerate(node_midpoints(f, lam)):
                if p not in seen_m:
                    seen_m.add(p)
                    mids.append({"label": f"M{f.label}.{k}", "facet": f.label,
                                 "point": fmt_vec(p)})
    payload = {"lambda": fmt(lam), "degenerate": len(points) < 24, "count": len(points),
               "nodes": points}
    if args.midpoints:
        payload["midpoints"] = mids
    doc = envelope("node_points", payload,
                   make_manifest("nodes", {"lambda": fmt(lam), "midpoints": args.midpoints}, {}))
    _emit(doc, args.out)
    return EXIT_OK


def cmd_search(args) -> int:
    budget = args.budget or _env_budget(DEFAULT_CELL_BUDGET)
    if args.complete:
        try:
            entry = catalog_entry(args.complete)
        except KeyError as e:
            raise UsageError(str(e.args[0]))
        cands = complete_by_symmetry(entry, args.m or entry.m, budget)
        found = next((e for e in cands if e.verified == COVERED), None)
        payload = {"candidates": [e.to_json() for e in cands],
                   "found": found.to_json() if found else None}
        inputs = {"complete": args.complete, "m": args.m or entry.m}
    else:
        if args.m is None or args.lam is None:
            raise UsageError("search needs --m and --lambda (or --complete ID)")
        if args.m < 1:
            raise UsageError("--m must be positive")
        cfg = local_search_upper(args.m, args.lam, args.seed, args.iterations, budget)
        found = cfg
        payload = {"found": cfg.to_json() if cfg else None}
        inputs = {"m": args.m, "lambda": fmt(args.lam), "iterations": args.iterations}
    doc = envelope("search", payload, make_manifest("search", inputs, {"cells": budget},
                                                     args.seed))
    _emit(doc, args.out)
    return EXIT_OK if found is not None else EXIT_NEGATIVE


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="covgamma", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    v = sub.add_parser("verify", help="decide whether a configuration covers")
    v.add_argument("config", nargs="?", help="JSON file {lambda, translations[, body]}")
    v.add_argument("--catalog", help="use a built-in configuration: "
                   + ", ".join(e.id for e in catalog()))
    v.add_argument("--lambda", dest="lam", type=_rational, help="override the ratio (p/q)")
    v.add_argument("--budget", type=int, help="cell budget")
    v.add_argument("--out", help="also write the JSON verdict here")
    v.set_defaults(func=cmd_verify)

    lo = sub.add_parser("lower", help="certify a lower bound with witness points")
    lo.add_argument("--m", type=int, required=True)
    lo.add_argument("--lambda", dest="lam", type=_rational, required=True)
    lo.add_argument("--witness", default="vertices",
                    help="comma list of vertices,centers,nodes,midpoints")
    lo.add_argument("--node-lambda", type=_rational,
                    help="ratio defining node points (default: --lambda)")
    lo.add_argument("--enrich", action="store_true",
                    help="retry with extra node points if inconclusive")
    lo.add_argument("--budget", type=int, help="search node budget")
    lo.add_argument("--out")
    lo.set_defaults(func=cmd_lower)

    t = sub.add_parser("table", help="compute the gamma table")
    t.add_argument("--m-min", type=int, default=4)
    t.add_argument("--m-max", type=int, default=17)
    t.add_argument("--budget", type=int, help="witness-engine node budget")
    t.add_argument("--cell-budget", type=int)
    t.add_argument("--descent-steps", type=int, default=4)
    t.add_argument("--jobs", type=int, default=1, help="worker processes for lower bounds")
    t.add_argument("--out-dir", default=".")
    t.set_defaults(func=cmd_table)

    n = sub.add_parser("nodes", help="list node points of every facet")
    n.add_argument("--lambda", dest="lam", type=_rational, required=True)
    n.add_argument("--midpoints", action="store_true")
    n.add_argument("--out")
    n.set_defaults(func=cmd_nodes)

    s = sub.add_parser("search", help="look for a covering configuration")
    s.add_argument("--m", type=int)
    s.add_argument("--lambda", dest="lam", type=_rational)
    s.add_argument("--complete", metavar="ID", help="symmetric completion of a catalog entry")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--iterations", type=int, default=20)
    s.add_argument("--budget", type=int)
    s.add_argument("--out")
    s.set_defaults(func=cmd_search)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
