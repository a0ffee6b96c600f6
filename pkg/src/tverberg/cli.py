"""Command-line frontend.

Subcommands run one constructor each (cycle2d, match2d-rb, match-dd,
match-dd-rb), verify an existing graph against an instance, or generate
seeded instances.  Exit codes: 0 success, 1 usage or input errors, 2
verification failure (including internal invariant breaks, which are
reported as failed constructions).
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from . import assignment, descent, planar
from .fileio import (
    RunReport,
    graph_to_payload,
    instance_digest,
    load_graph,
    load_instance,
    payload_to_edges,
    report_from_witness,
    save_instance,
)
from .geometry import TverbergError, h_value, verify_tverberg
from .oracle import InstanceSpec, generate
from .svg import render_svg


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="tverberg", description=__doc__)
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("cycle2d", help="Hamiltonian Tverberg cycle for planar points")
    p.add_argument("input")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--svg", default=None, help="write an SVG rendering here")

    for name, help_text in (
        ("match2d-rb", "planar red-blue Tverberg matching (rotating sweep)"),
        ("match-dd", "open Tverberg matching in R^d (descent)"),
        ("match-dd-rb", "red-blue Tverberg matching in R^d (assignment)"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("input")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--tol", type=float, default=None)
        p.add_argument("--mode", choices=("closed", "open"), default=None)
        p.add_argument("--trace", default=None, help="write descent steps here (JSONL)")

    p = sub.add_parser("verify", help="verify a graph file against an instance")
    p.add_argument("input")
    p.add_argument("graph")
    p.add_argument("--mode", choices=("closed", "open"), default="closed")

    p = sub.add_parser("gen", help="generate a seeded instance file")
    p.add_argument("output")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--colors", choices=("none", "rb"), default="none")
    p.add_argument("--dist", choices=("cube", "sphere", "collinear"), default="cube")
    p.add_argument("--noise", type=float, default=0.0)
    return top


def _emit(report: RunReport, out) -> None:
    out.write(report.to_text())


def cmd_cycle2d(args, out) -> int:
    ps = load_instance(args.input)
    if ps.colors is not None:
        raise ValueError("cycle2d expects uncolored input")
    if ps.dim != 2:
        raise ValueError("cycle2d expects 2-D input")
    if ps.n < 3:
        raise ValueError("cycle2d needs at least 3 points")
    t0 = time.perf_counter()
    order, wit = planar.build_tverberg_cycle(ps, seed=args.seed)
    ms = (time.perf_counter() - t0) * 1000
    report = report_from_witness("cycle2d", ps, order, wit, "closed", wall_ms=ms)
    _emit(report, out)
    if args.svg:
        edges = payload_to_edges(report.graph)
        Path(args.svg).write_text(render_svg(ps, edges, wit))
    return 0


def cmd_match(args, out, command: str) -> int:
    ps = load_instance(args.input)
    t0 = time.perf_counter()
    iterations = None
    trace_fh = open(args.trace, "w") if args.trace else None
    try:
        if command == "match2d-rb":
            mode = args.mode or "closed"
            tol = args.tol if args.tol is not None else 1e-9
            edges, wit = planar.build_redblue_matching_2d(ps, seed=args.seed)
        elif command == "match-dd":
            if args.mode not in (None, "open"):
                raise ValueError("match-dd is strictly open-mode")
            mode = "open"
            tol = args.tol if args.tol is not None else 1e-12
            run = descent.open_tverberg_matching(
                ps, seed=args.seed, tol=tol, trace=trace_fh
            )
            edges, wit = run.matching, run.witness
            iterations = run.iterations
        else:
            mode = args.mode or "closed"
            tol = args.tol if args.tol is not None else 1e-9
            edges, wit = assignment.redblue_tverberg_matching(ps)
    finally:
        if trace_fh:
            trace_fh.close()
    ms = (time.perf_counter() - t0) * 1000
    report = report_from_witness(
        command, ps, edges, wit, mode, iterations=iterations, wall_ms=ms
    )
    _emit(report, out)
    ok = wit.value <= tol if mode == "closed" else wit.value < -tol
    return 0 if ok else 2


def cmd_verify(args, out) -> int:
    ps = load_instance(args.input)
    payload = load_graph(args.graph)
    edges = payload_to_edges(payload)
    t0 = time.perf_counter()
    result = verify_tverberg(ps, edges, mode=args.mode)
    ms = (time.perf_counter() - t0) * 1000
    graph = payload.get("graph", payload) if "graph" in payload else payload
    report = report_from_witness(
        "verify", ps, graph, result.witness, args.mode, wall_ms=ms
    )
    # The reported value re-derives from the inputs alone.
    report.extra["recomputed_value"] = h_value(ps, edges, result.witness.x)
    _emit(report, out)
    return 0 if result.ok else 2


def cmd_gen(args, out) -> int:
    spec = InstanceSpec(
        dim=args.dim,
        n=args.n,
        colors=args.colors,
        seed=args.seed,
        dist=args.dist,
        noise=args.noise,
    )
    ps = generate(spec)
    save_instance(ps, args.output)
    out.write(f"wrote {args.output} (digest {instance_digest(ps)})\n")
    return 0


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code else 0
    try:
        if args.command == "cycle2d":
            return cmd_cycle2d(args, out)
        if args.command in ("match2d-rb", "match-dd", "match-dd-rb"):
            return cmd_match(args, out, args.command)
        if args.command == "verify":
            return cmd_verify(args, out)
        if args.command == "gen":
            return cmd_gen(args, out)
        return 1
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except TverbergError as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
