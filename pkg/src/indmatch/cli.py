"""Command-line interface.

    indmatch solve-ind -k K FILE
    indmatch solve-extend FILE
    indmatch verify FILE --set 1,2,3 [-k K]
    indmatch decompose FILE [-k K] [--nice]
    indmatch bench [DIR] [--random N --seed S] [--out OUTDIR]
    indmatch branching-number 1,4,4,4,4

Exit status: 0 on success, 1 when ``verify`` rejects the set, 2 on usage or
input errors.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import random
import sys
import time
from dataclasses import dataclass
from typing import Optional

from .branching import branching_number
from .errors import DomainError, ParseError, ValidationError
from .generators import erdos_renyi
from .graph import Graph, read_graph
from .pathdecomp import (
    base_decompose,
    compress,
    decompose_for_instance,
    default_threshold,
    make_nice,
    serialize_decomposition,
)
from .pipeline import degree3_count, solve_extend, solve_ind, verify
from .report import bench_csv, write_bench_report

GRAPH_SUFFIXES = (".gr", ".dimacs", ".col", ".txt", ".edges", ".el")


@dataclass
class RunConfig:
    command: str
    input: Optional[str] = None
    k: Optional[int] = None
    threshold: int = 15
    seed: int = 0
    output: str = "text"
    trace: Optional[str] = None

    def __post_init__(self):
        if self.threshold < 4:
            raise ValueError("exact-decomposition threshold must be at least 4")
        if self.command == "solve-ind" and self.k is None:
            raise ValueError("solve-ind needs a budget (-k)")


def _id_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _fmt_ids(ids) -> str:
    return ",".join(str(v) for v in sorted(ids)) or "-"


def _print_answer(payload: dict, out):
    out.write(f"decision: {payload['decision']}\n")
    if payload.get("k") is not None:
        out.write(f"k: {payload['k']}\n")
    if payload["solution"] is not None:
        out.write(f"size: {len(payload['solution'])}\n")
        out.write(f"solution: {_fmt_ids(payload['solution'])}\n")
        out.write("matching: " + (" ".join(f"{u}-{v}" for u, v in payload["matching"]) or "-") + "\n")
    stats = payload["stats"]
    rules = " ".join(f"{k}={v}" for k, v in stats["rule_counts"].items())
    out.write(f"stats: nodes={stats['nodes']} leaves={stats['leaves']} "
              f"max_width={stats['max_width']} {rules}".rstrip() + "\n")


def _write_trace(path, traces):
    with open(path, "w") as fh:
        json.dump(traces, fh, sort_keys=True)


def _bench_rows(graphs, k, threshold):
    rows = []
    for name, g in graphs:
        budget = k if k is not None else solve_extend(g, threshold).size
        start = time.perf_counter()
        ans = solve_ind(g, budget, threshold)
        millis = (time.perf_counter() - start) * 1000
        stats = ans.stats
        rows.append({
            "instance": name, "n": g.n, "m": g.m, "k": budget,
            "decision": "yes" if ans.decision else "no",
            "size": ans.solution.size if ans.solution else "",
            "nodes": stats.search.nodes_expanded, "leaves": stats.search.leaves,
            "max_width": stats.max_width, "millis": f"{millis:.2f}",
        })
    return rows


def _bench_graphs(args):
    if args.random:
        rng = random.Random(args.seed)
        for i in range(args.random):
            n = rng.randint(2, args.max_n)
            p = rng.choice((0.15, 0.3, 0.5))
            yield f"er{i:04d}_n{n}_p{p}", erdos_renyi(n, p, rng)
        return
    if args.dir is None:
        raise ValueError("bench needs a directory or --random N")
    for name in sorted(os.listdir(args.dir)):
        if name.endswith(GRAPH_SUFFIXES):
            yield name, read_graph(os.path.join(args.dir, name))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="indmatch", description="Deletion to induced matching solver")
    parser.add_argument("--threshold", type=int, default=None,
                        help="largest component decomposed exactly (default from "
                             "$INDMATCH_EXACT_THRESHOLD or 15)")
    parser.add_argument("--json", action="store_true", help="JSON output")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve-ind", help="decide whether k deletions suffice")
    p.add_argument("-k", type=int, required=True)
    p.add_argument("file")
    p.add_argument("--trace", metavar="PATH", help="write DP table sizes as JSON")

    p = sub.add_parser("solve-extend", help="minimum deletion set")
    p.add_argument("file")
    p.add_argument("--trace", metavar="PATH", help="write DP table sizes as JSON")

    p = sub.add_parser("verify", help="check a deletion set")
    p.add_argument("file")
    p.add_argument("--set", dest="vertex_set", type=_id_list, required=True)
    p.add_argument("-k", type=int)

    p = sub.add_parser("decompose", help="print a path decomposition")
    p.add_argument("file")
    p.add_argument("-k", type=int, help="budget used for the width bound (max degree 3 only)")
    p.add_argument("--nice", action="store_true")

    p = sub.add_parser("bench", help="CSV of solver statistics over a directory")
    p.add_argument("dir", nargs="?")
    p.add_argument("-k", type=int, help="fixed budget (default: each instance's minimum)")
    p.add_argument("--random", type=int, default=0, metavar="N", help="use N random graphs instead")
    p.add_argument("--max-n", type=int, default=16)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", metavar="OUTDIR", help="also write bench.csv and figures here")

    p = sub.add_parser("branching-number", help="root of a branching vector")
    p.add_argument("vector", type=_id_list)
    return parser


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    threshold = args.threshold if args.threshold is not None else default_threshold()
    try:
        RunConfig(args.command, getattr(args, "file", None), getattr(args, "k", None),
                  threshold, getattr(args, "seed", 0), "json" if args.json else "text",
                  getattr(args, "trace", None))
        return _dispatch(args, threshold, out)
    except (ParseError, ValidationError, DomainError, ValueError, OSError) as exc:
        print(f"indmatch: error: {exc}", file=sys.stderr)
        return 2


def _dispatch(args, threshold: int, out) -> int:
    cmd = args.command
    if cmd == "branching-number":
        out.write(f"{branching_number(args.vector):.4f}\n")
        return 0

    if cmd == "bench":
        rows = _bench_rows(_bench_graphs(args), args.k, threshold)
        out.write(bench_csv(rows))
        if args.out:
            write_bench_report(rows, args.out)
        return 0

    g = read_graph(args.file)

    if cmd in ("solve-ind", "solve-extend"):
        traces = [] if args.trace else None
        if cmd == "solve-ind":
            ans = solve_ind(g, args.k, threshold, dp_traces=traces)
        else:
            ans = solve_extend(g, threshold, dp_traces=traces)
        if traces is not None:
            _write_trace(args.trace, traces)
        payload = ans.to_json()
        if args.json:
            out.write(json.dumps(payload, sort_keys=True) + "\n")
        else:
            _print_answer(payload, out)
        return 0

    if cmd == "verify":
        ok = verify(g, args.vertex_set, args.k)
        if args.json:
            out.write(json.dumps({"valid": ok}) + "\n")
        else:
            out.write("valid\n" if ok else "invalid\n")
        return 0 if ok else 1

    if cmd == "decompose":
        if g.max_degree() <= 3:
            k = args.k if args.k is not None else math.ceil(degree3_count(g) / 2.5)
            pd = decompose_for_instance(g, k, threshold)
            if not args.nice:
                pd = compress(pd)
        else:
            pd = base_decompose(g, threshold)
            if args.nice:
                pd = make_nice(pd)
        out.write(serialize_decomposition(pd))
        return 0

    raise AssertionError(cmd)


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
