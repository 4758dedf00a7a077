"""Command-line entry point for reproducible batch runs.

Subcommands: `bound` builds/solves/exports the factor-revealing LPs,
`simulate` estimates approximation ratios on graph families, and `verify`
runs the registered structural checks.

Exit codes: 0 success, 2 usage error, 3 solver failure, 4 golden/bound
mismatch, 5 check failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from pathlib import Path

from . import tables
from .graph import generate_odd_girth_graph, generate_perfect_matching_graph, graph_from_text
from .harness import (adversarial_order_search, check_bound_dominance,
                      exact_expected_ratio, monte_carlo_ratio,
                      perfect_matching_graphs)
from .lemmas import CHECKS, lemma_suite, replay_witness
from .lpfactory import (build_franking_lp, build_odd_girth_ranking_lp,
                        build_ranking_lp, build_tightened_ranking_lp)
from .lpio import LP_TEXT, MPS, export_model
from .rng import split_seed
from .solver import solve, verify_solution

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_SOLVER = 3
EXIT_MISMATCH = 4
EXIT_CHECK = 5

VARIANTS = ("ranking", "tightened", "oddgirth", "franking")


class UsageError(Exception):
    pass


def _out_dir(args) -> Path:
    base = args.output_dir or os.environ.get("QCMATCH_OUTDIR", ".")
    path = Path(base)
    path.mkdir(parents=True, exist_ok=True)
    return path


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qcmatch",
        description="Randomized greedy matching workbench: factor-revealing "
                    "LP bounds, ratio simulation, and structural verification.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--jobs", type=int, default=os.cpu_count() or 1,
                        help="worker parallelism bound (default: cpu count)")
    common.add_argument("--output-dir", default=None,
                        help="output directory (default: $QCMATCH_OUTDIR or .)")
    sub = parser.add_subparsers(dest="command", required=True)

    b = sub.add_parser("bound", parents=[common],
                       help="build, solve, and export the bound LPs")
    b.add_argument("--variant", required=True, choices=VARIANTS)
    b.add_argument("--n", required=True, type=int, help="discretization size")
    b.add_argument("--k", type=int, default=None,
                   help="odd-girth class parameter (oddgirth only, k >= 2)")
    b.add_argument("--solve", action="store_true", help="solve in process")
    b.add_argument("--engine", default="auto",
                   choices=("auto", "simplex", "highs"))
    b.add_argument("--export", default=None, metavar="PATH",
                   help="write the model to PATH")
    b.add_argument("--format", default="lp", choices=("lp", "mps"),
                   help="export format")
    b.add_argument("--golden", action="store_true",
                   help="compare the solved objective with the published value")
    b.add_argument("--dump", action="store_true",
                   help="print the tagged constraint listing")

    s = sub.add_parser("simulate", parents=[common],
                       help="estimate approximation ratios")
    s.add_argument("--kind", required=True,
                   choices=("greedy", "irp", "rdo", "mrg", "uur", "ranking",
                            "franking"))
    src = s.add_mutually_exclusive_group(required=True)
    src.add_argument("--pairs", type=int, help="perfect-matching family size")
    src.add_argument("--graph", help="graph text file")
    s.add_argument("--min-odd-girth", type=int, default=None,
                   help="restrict generated instances to this odd girth")
    s.add_argument("--extra-p", type=float, default=0.4,
                   help="extra-edge probability for generated instances")
    s.add_argument("--instances", type=int, default=20,
                   help="number of sampled instances")
    s.add_argument("--all-graphs", action="store_true",
                   help="sweep canonical representatives of the whole family")
    s.add_argument("--exact", action="store_true",
                   help="exact enumeration instead of sampling")
    s.add_argument("--trials", type=int, default=2000,
                   help="Monte-Carlo trials per instance")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--worst-pi", action="store_true",
                   help="minimize over all decision orders")
    s.add_argument("--bound", type=float, default=None,
                   help="fail (exit 4) if any ratio drops below this bound")
    s.add_argument("--out", default=None, help="CSV output path")

    v = sub.add_parser("verify", parents=[common],
                       help="run the structural check suites")
    only = v.add_mutually_exclusive_group()
    only.add_argument("--all", action="store_true", help="run every check")
    only.add_argument("--only", default=None,
                      help="comma-separated check names")
    only.add_argument("--replay", default=None, metavar="WITNESS",
                      help="re-run a dumped witness file")
    v.add_argument("--budget", type=int, default=100,
                   help="instances per check")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--out", default=None, help="JSON report path")
    return parser


def cmd_bound(args) -> int:
    if args.variant == "oddgirth":
        if args.k is None or args.k < 2:
            raise UsageError("oddgirth requires --k >= 2")
    elif args.k is not None:
        raise UsageError("--k only applies to the oddgirth variant")
    if args.n < 1:
        raise UsageError("--n must be >= 1")
    if args.golden and not args.solve:
        raise UsageError("--golden requires --solve")
    if args.golden:
        if tables.golden_value(args.variant, args.n, args.k) is None:
            raise UsageError(
                f"no published value for variant={args.variant} n={args.n}"
                + (f" k={args.k}" if args.k is not None else ""))
    builders = {
        "ranking": lambda: build_ranking_lp(args.n),
        "tightened": lambda: build_tightened_ranking_lp(args.n),
        "oddgirth": lambda: build_odd_girth_ranking_lp(args.n, args.k),
        "franking": lambda: build_franking_lp(args.n),
    }
    model = builders[args.variant]()
    print(f"model {model.name}: {model.constraint_count} constraints, "
          f"{model.variable_count} variables")
    if args.dump:
        print(model.dump(), end="")
    if args.export:
        fmt = LP_TEXT if args.format == "lp" else MPS
        Path(args.export).write_text(export_model(model, fmt))
        print(f"wrote {args.format} model to {args.export}")
    if not args.solve:
        return EXIT_OK
    solution = solve(model, engine=args.engine)
    if not solution.optimal:
        print(f"solver failed: status {solution.status}", file=sys.stderr)
        return EXIT_SOLVER
    report = verify_solution(model, solution.assignment, tol=1e-8)
    if not report.ok:
        print(f"solution failed rational re-check: worst violation "
              f"{report.max_violation:.3e} at {report.violations[0][0]}",
              file=sys.stderr)
        return EXIT_SOLVER
    print(f"objective {solution.objective_value:.6f} "
          f"(verified, max violation {report.max_violation:.2e})")
    if args.golden:
        want = tables.golden_value(args.variant, args.n, args.k)
        diff = abs(solution.objective_value - want)
        print(f"golden {want}: |diff| = {diff:.2e} "
              f"(tolerance {tables.GOLDEN_TOLERANCE})")
        if diff > tables.GOLDEN_TOLERANCE:
            return EXIT_MISMATCH
    return EXIT_OK


def cmd_simulate(args) -> int:
    kind = args.kind.upper()
    if args.pairs is not None and args.pairs < 1:
        raise UsageError("--pairs must be >= 1")
    if args.worst_pi and kind not in ("FRANKING", "GREEDY", "IRP"):
        raise UsageError("--worst-pi applies to franking, greedy, irp")
    graphs = []
    if args.graph:
        graphs.append(graph_from_text(Path(args.graph).read_text()))
    elif args.all_graphs:
        if args.min_odd_girth:
            raise UsageError("--all-graphs cannot combine with --min-odd-girth")
        graphs.extend(perfect_matching_graphs(args.pairs, canonical=True))
    else:
        for i in range(args.instances):
            seed = split_seed(args.seed, i)
            if args.min_odd_girth:
                graphs.append(generate_odd_girth_graph(
                    args.pairs, args.min_odd_girth, 500, seed))
            else:
                graphs.append(generate_perfect_matching_graph(
                    args.pairs, args.extra_p, seed))
    rows = []
    failed = False
    for idx, g in enumerate(graphs):
        order = tuple(range(g.vertex_count))
        try:
            if args.worst_pi:
                _, est = adversarial_order_search(g, kind)
            elif args.exact:
                est = exact_expected_ratio(
                    g, kind,
                    order if kind in ("FRANKING", "GREEDY", "IRP") else None)
            else:
                est = monte_carlo_ratio(
                    g, kind,
                    order if kind in ("FRANKING", "GREEDY", "IRP") else None,
                    trials=args.trials, seed=split_seed(args.seed, 10**6 + idx))
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        margin = None
        if args.bound is not None:
            slack = 0.0 if est.exact else 4 * est.std_error
            margin = est.mean - args.bound + slack
            if margin < 0:
                failed = True
        rows.append((idx, args.kind, est.mean, est.std_error,
                     args.bound if args.bound is not None else "",
                     margin if margin is not None else ""))
    out_path = args.out or (_out_dir(args) / "simulate.csv")
    with open(out_path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["instance", "algorithm", "ratio", "std_error",
                         "bound", "margin"])
        writer.writerows(rows)
    worst = min(r[2] for r in rows)
    print(f"{len(rows)} instance(s), worst ratio {worst:.5f}; wrote {out_path}")
    if failed:
        print("bound dominance failed", file=sys.stderr)
        return EXIT_MISMATCH
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.replay:
        message = replay_witness(Path(args.replay).read_text())
        if message is None:
            print("witness passes with the current engine")
            return EXIT_OK
        print(f"witness still fails: {message}", file=sys.stderr)
        return EXIT_CHECK
    if args.only:
        names = [n.strip() for n in args.only.split(",") if n.strip()]
        unknown = [n for n in names if n not in CHECKS]
        if unknown:
            raise UsageError(
                f"unknown checks {unknown}; registered: {', '.join(sorted(CHECKS))}")
    else:
        names = list(CHECKS)
    out_dir = _out_dir(args)
    report = lemma_suite(names, instance_budget=args.budget, seed=args.seed,
                         witness_dir=out_dir / "witnesses", jobs=args.jobs)
    out_path = args.out or (out_dir / "verify.json")
    Path(out_path).write_text(report.to_json())
    for name, outcome in report.outcomes.items():
        status = "ok" if outcome.ok else f"{len(outcome.failures)} FAILURES"
        print(f"{name}: {outcome.instances} instances, {status}")
    print(f"wrote {out_path}")
    return EXIT_OK if report.ok else EXIT_CHECK


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0
    try:
        if args.command == "bound":
            return cmd_bound(args)
        if args.command == "simulate":
            return cmd_simulate(args)
        return cmd_verify(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
