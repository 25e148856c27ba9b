#!/usr/bin/env python
"""
Command-line entry point for the K_r-bootstrap percolation laboratory.

Usage:
    python percolate.py close --r 4 --graph graphs/k4me.txt --json
    python percolate.py gen ht --r 5 --t 3
    python percolate.py search taumax --n 5 --r 4
    python percolate.py threshold --n 30 --r 4 --trials 2000 --seed 7
"""
import sys
import json
import argparse
import logging
from pathlib import Path
from typing import Any, List, Optional

import numpy as np

from config.settings import (
    DEFAULT_SEED,
    DEFAULT_TRIALS,
    DEFAULT_WORKERS,
    FORMAT_VERSION,
    LOG_LEVEL,
    META_CLIQUE_BUDGET,
)
from src import __version__
from src.analysis.bounds import audit_bounds
from src.analysis.sources import analyze
from src.families.ht import HtLayout, LayoutError, build_ht, build_kr_minus_e, build_path
from src.families.lh import LhLayout, build_lh
from src.families.verification import verify_ht, verify_lh
from src.graphs.edge_list import GraphFormatError, load_graph, parse_graph_text
from src.graphs.graph import Graph, InvalidGraphError
from src.percolation.engine import ProcessParams, close
from src.search.enumeration import DEFAULT_SHARDS, BudgetExceededError
from src.search.extremal import min_edges_given_tau, min_percolating_edges, tau_max
from src.simulation.threshold import estimate_threshold, percolation_curve
from src.utilities.helpers import print_colored, setup_logging
from src.utilities.serialization import emit

logger = logging.getLogger(__name__)


class UsageError(ValueError):
    """Raised for flag combinations argparse cannot check on its own."""


def build_parser() -> argparse.ArgumentParser:
    """Build the argument parser with every subcommand."""
    parser = argparse.ArgumentParser(prog="percolate", description="K_r-bootstrap percolation laboratory")
    parser.add_argument('--version', action='version', version=f"%(prog)s {__version__} (format {FORMAT_VERSION})")

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--json', action='store_true', help="Emit JSON instead of text")
    common.add_argument('--out', type=str, help="Write the result to this path instead of standard output")
    common.add_argument('--verbose', '-v', action='store_true', help="Enable verbose logging")

    sub = parser.add_subparsers(dest='command', required=True)

    for name, helptext in (("close", "Run the process to its fixed point"), ("tau", "Print the saturation time only")):
        cmd = sub.add_parser(name, parents=[common], help=helptext)
        cmd.add_argument('--r', type=int, required=True, help="Clique size")
        cmd.add_argument('--graph', type=str, required=True, help="Edge-list file or inline edge-list text")
        if name == "close":
            cmd.add_argument('--tmax', type=int, help="Emit the round graph G_t for t = min(tmax, tau) instead of the trace")

    gen = sub.add_parser('gen', parents=[common], help="Generate a family member")
    gen.add_argument('family', choices=['krminuse', 'path', 'ht', 'lh'])
    gen.add_argument('--r', type=int, help="Clique size")
    gen.add_argument('--t', type=int, help="Generations of H_t")
    gen.add_argument('--h', type=int, help="Layers of L_h")
    gen.add_argument('--m', type=int, help="Edges of the path")
    gen.add_argument('--layout', type=str, help="Write the JSON layout sidecar to this path")

    verify = sub.add_parser('verify', parents=[common], help="Check a family member against its layout")
    verify.add_argument('family', choices=['ht', 'lh'])
    verify.add_argument('--r', type=int, required=True, help="Clique size")
    verify.add_argument('--t', type=int, help="Generations of H_t")
    verify.add_argument('--h', type=int, help="Layers of L_h")
    verify.add_argument('--graph', type=str, help="Graph to check (default: the canonical member)")
    verify.add_argument('--layout', type=str, help="JSON layout sidecar for --graph")

    for name, helptext in (("sources", "Track sources, expansions and mergers"), ("audit", "Audit the known bounds")):
        cmd = sub.add_parser(name, parents=[common], help=helptext)
        cmd.add_argument('--r', type=int, required=True, help="Clique size")
        cmd.add_argument('--graph', type=str, required=True, help="Edge-list file or inline edge-list text")
        cmd.add_argument('--budget', type=int, default=META_CLIQUE_BUDGET, help="Meta-clique budget")

    search = sub.add_parser('search', parents=[common], help="Exhaustive extremal search")
    search.add_argument('objective', choices=['taumax', 'minsat', 'minedges'])
    search.add_argument('--n', type=int, required=True, help="Vertex count (upper bound for minedges)")
    search.add_argument('--r', type=int, required=True, help="Clique size")
    search.add_argument('--t', type=int, help="Target saturation time for minedges")
    search.add_argument('--workers', type=int, default=DEFAULT_WORKERS, help="joblib workers (-1: all cores)")
    search.add_argument('--dedup', action='store_true', help="Skip isomorphic graphs within a shard")
    search.add_argument('--allow-n8', action='store_true', help="Permit the n = 8 search")
    search.add_argument('--shards', type=int, default=DEFAULT_SHARDS, help="Number of shards")
    search.add_argument('--shard-index', type=int, help="Run only this shard")

    threshold = sub.add_parser('threshold', parents=[common], help="Monte Carlo threshold estimate")
    threshold.add_argument('--n', type=int, required=True, help="Vertex count")
    threshold.add_argument('--r', type=int, required=True, help="Clique size")
    threshold.add_argument('--trials', type=int, default=DEFAULT_TRIALS, help="Number of trials")
    threshold.add_argument('--seed', type=int, default=DEFAULT_SEED, help="Master seed")
    threshold.add_argument('--workers', type=int, default=DEFAULT_WORKERS, help="joblib workers (-1: all cores)")
    threshold.add_argument('--csv', action='store_true', help="Emit quantiles (or the curve) as CSV")
    threshold.add_argument('--curve', type=int, help="Emit the percolation curve on this many equal steps of p")

    return parser


def parse_graph_input(source: str) -> Graph:
    """
    Read a graph from a file path or from inline edge-list text.

    Inline text may separate lines with real newlines, literal ``\\n`` or ``;``.
    """
    path = Path(source)
    if path.is_file():
        return load_graph(path)
    text = source.replace("\\n", "\n").replace(";", "\n")
    if "\n" in text or all(part.lstrip("-").isdigit() for part in text.split()):
        return parse_graph_text(text)
    raise FileNotFoundError(f"Graph file not found: {source}")


def _require(args: argparse.Namespace, *names: str) -> None:
    missing = [f"--{name}" for name in names if getattr(args, name) is None]
    if missing:
        raise UsageError(f"{args.command} {getattr(args, 'family', '')} needs {', '.join(missing)}".replace("  ", " "))


def _write_sidecar(path: Optional[str], layout: Any) -> None:
    if path:
        Path(path).write_text(json.dumps(layout.to_dict(), sort_keys=True, indent=2) + "\n", encoding="utf-8")
        print_colored(f"Layout written to {path}", "green")


def run_close(args: argparse.Namespace) -> Any:
    trace = close(parse_graph_input(args.graph), ProcessParams(args.r))
    if args.command == "tau":
        return {"tau": trace.tau} if args.json else trace.tau
    if args.tmax is not None:
        return trace.graph_at(max(0, min(args.tmax, trace.tau)))
    return trace


def run_gen(args: argparse.Namespace) -> Any:
    if args.family == "krminuse":
        _require(args, "r")
        return build_kr_minus_e(args.r)
    if args.family == "path":
        _require(args, "m")
        return build_path(args.m)
    if args.family == "ht":
        _require(args, "r", "t")
        graph, layout = build_ht(args.r, args.t)
    else:
        _require(args, "r", "h")
        graph, layout = build_lh(args.r, args.h)
    _write_sidecar(args.layout, layout)
    return graph


def run_verify(args: argparse.Namespace) -> Any:
    if args.graph and not args.layout:
        raise UsageError("verify with --graph also needs --layout")
    layout_data = json.loads(Path(args.layout).read_text(encoding="utf-8")) if args.layout else None
    if args.family == "ht":
        if layout_data is None:
            _require(args, "t")
            graph, layout = build_ht(args.r, args.t)
        else:
            graph, layout = parse_graph_input(args.graph), HtLayout.from_dict(layout_data)
        report = verify_ht(graph, layout)
    else:
        if layout_data is None:
            _require(args, "h")
            graph, layout = build_lh(args.r, args.h)
        else:
            graph, layout = parse_graph_input(args.graph), LhLayout.from_dict(layout_data)
        report = verify_lh(graph, layout)
    color = "green" if report.passed else "red"
    print_colored(f"{report.subject}: {report.checks} checks, {len(report.violations)} violations", color, bold=True)
    return report


def run_sources(args: argparse.Namespace) -> Any:
    graph = parse_graph_input(args.graph)
    params = ProcessParams(args.r)
    if args.command == "sources":
        return analyze(graph, params, budget=args.budget)
    trace = close(graph, params)
    return audit_bounds(graph, params, trace=trace, analysis=analyze(graph, params, trace=trace, budget=args.budget))


def run_search(args: argparse.Namespace) -> Any:
    options = dict(
        workers=args.workers,
        dedup=args.dedup,
        allow_large=args.allow_n8,
        shards=args.shards,
        shard_index=args.shard_index,
    )
    if args.objective == "taumax":
        result = tau_max(args.n, args.r, **options)
    elif args.objective == "minsat":
        result = min_percolating_edges(args.n, args.r, **options)
    else:
        _require(args, "t")
        result = min_edges_given_tau(args.n, args.r, args.t, **options)
    print_colored(f"Scanned {result.graphs_scanned} graphs in {result.wall_time:.1f}s", "cyan")
    return result


def run_threshold(args: argparse.Namespace) -> Any:
    estimate = estimate_threshold(args.n, ProcessParams(args.r), args.trials, seed=args.seed, workers=args.workers)
    if args.curve:
        return percolation_curve(estimate.samples, np.linspace(0.0, 1.0, args.curve + 1).tolist())
    return estimate


HANDLERS = {
    "close": run_close,
    "tau": run_close,
    "gen": run_gen,
    "verify": run_verify,
    "sources": run_sources,
    "audit": run_sources,
    "search": run_search,
    "threshold": run_threshold,
}


def run(argv: Optional[List[str]] = None) -> int:
    """
    Parse ``argv``, run one subcommand and write its result.

    Returns:
        0 on success, 1 when a budget refuses the computation, 2 on bad usage or input
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    setup_logging(logging.DEBUG if args.verbose else LOG_LEVEL)

    try:
        result = HANDLERS[args.command](args)
        if getattr(args, "csv", False) or (args.command == "threshold" and args.curve):
            fmt = "csv"
        else:
            fmt = "json" if args.json else "text"
        text = f"{result}\n" if isinstance(result, int) else emit(result, fmt)
        if args.out:
            Path(args.out).write_text(text, encoding="utf-8")
            print_colored(f"Result written to {args.out}", "green")
        else:
            sys.stdout.write(text)
    except BudgetExceededError as e:
        print_colored(f"Refused: {e}", "yellow", bold=True)
        return 1
    except (GraphFormatError, InvalidGraphError, LayoutError, UsageError, FileNotFoundError, ValueError) as e:
        print_colored(f"Error: {e}", "red", bold=True)
        return 2

    return 0


def main() -> int:
    """Main function to run the command-line interface."""
    return run(sys.argv[1:])


if __name__ == "__main__":
    sys.exit(main())
