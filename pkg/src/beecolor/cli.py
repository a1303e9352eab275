"""Command-line interface: gen, solve, bench, and report subcommands.

Exit codes: 0 success, 1 I/O or input-data error, 2 usage error,
3 solve finished without finding a proper coloring.
"""

from __future__ import annotations

import argparse
import math
import sys

from .generator import FAMILIES, InstanceSpec, generate
from .graph import DimacsError, parse_dimacs, write_dimacs
from .harness import (
    ExperimentPlan,
    ablation_table,
    ablation_to_csv,
    aggregate,
    aggregates_to_csv,
    records_from_csv,
    records_to_csv,
    run_plan,
)
from .solver import SCOUT_POLICIES, SolverParams, solve

EXIT_OK = 0
EXIT_IO = 1
EXIT_USAGE = 2
EXIT_NO_SOLUTION = 3


def _comma_list(valid: tuple[str, ...], label: str):
    def parse(text: str) -> tuple[str, ...]:
        items = tuple(part.strip() for part in text.split(",") if part.strip())
        for item in items:
            if item not in valid:
                raise argparse.ArgumentTypeError(f"unknown {label} {item!r}; expected {'|'.join(valid)}")
        if not items:
            raise argparse.ArgumentTypeError(f"empty {label} list")
        return items

    return parse


def _seed_range(text: str) -> tuple[int, ...]:
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            lo, hi = int(lo), int(hi)
            if hi < lo:
                raise argparse.ArgumentTypeError(f"empty seed range {text!r}")
            return tuple(range(lo, hi + 1))
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"seeds must be '<a>..<b>' or a comma list, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="beecolor", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate a 3-colorable instance as DIMACS")
    gen.add_argument("--family", required=True, choices=FAMILIES)
    gen.add_argument("--n", required=True, type=int)
    gen.add_argument("--p", required=True, type=float)
    gen.add_argument("--seed", required=True, type=int)
    gen.add_argument("--out", required=True)

    slv = sub.add_parser("solve", help="solve one DIMACS instance")
    slv.add_argument("--graph", required=True)
    slv.add_argument("--variant", required=True, choices=SCOUT_POLICIES)
    slv.add_argument("--np", type=int, default=100)
    slv.add_argument("--limit", type=int, default=1000)
    slv.add_argument("--max-fes", type=int, default=300_000)
    slv.add_argument("--lb", type=float, default=0.0)
    slv.add_argument("--ub", type=float, default=1.0)
    slv.add_argument("--lambda", dest="lam", type=float, default=None,
                     help="rwde step length (default 0.1 * (ub - lb))")
    slv.add_argument("--seed", required=True, type=int)
    slv.add_argument("--coloring-out", default=None)

    bench = sub.add_parser("bench", help="run an instance sweep and write record CSVs")
    bench.add_argument("--families", required=True, type=_comma_list(FAMILIES, "family"))
    bench.add_argument("--n", required=True, type=int)
    bench.add_argument("--p-from", required=True, type=float)
    bench.add_argument("--p-to", required=True, type=float)
    bench.add_argument("--p-step", required=True, type=float)
    bench.add_argument("--seeds", required=True, type=_seed_range)
    bench.add_argument("--runs", required=True, type=int)
    bench.add_argument("--variants", required=True, type=_comma_list(SCOUT_POLICIES, "variant"))
    bench.add_argument("--out", required=True)
    bench.add_argument("--aggregate-out", default=None)
    bench.add_argument("--threads", type=int, default=None,
                       help="worker processes (default: all cores)")
    bench.add_argument("--np", type=int, default=100)
    bench.add_argument("--limit", type=int, default=1000)
    bench.add_argument("--max-fes", type=int, default=300_000)
    bench.add_argument("--no-timing", action="store_true",
                       help="omit the wall_time_ms column for byte-reproducible CSVs")

    rep = sub.add_parser("report", help="random-vs-rwde ablation table from a record CSV")
    rep.add_argument("--in", dest="records_in", required=True)
    rep.add_argument("--out", required=True)

    return parser


def p_sweep(p_from: float, p_to: float, p_step: float) -> tuple[float, ...]:
    """Inclusive arithmetic sweep, rounded to avoid float drift."""
    if p_step <= 0 or p_to < p_from:
        return ()
    count = math.floor((p_to - p_from) / p_step + 0.5) + 1
    values = (round(p_from + i * p_step, 12) for i in range(count))
    return tuple(v for v in values if v <= p_to + 1e-12)


def _cmd_gen(args) -> int:
    try:
        spec = InstanceSpec(n=args.n, family=args.family, p=args.p, seed=args.seed)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    g = generate(spec)
    try:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(write_dimacs(g))
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    print(f"family={spec.family} n={g.n} m={g.m}")
    return EXIT_OK


def _cmd_solve(args) -> int:
    try:
        with open(args.graph, "r", encoding="utf-8") as fh:
            g = parse_dimacs(fh)
    except (OSError, DimacsError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    try:
        params = SolverParams(
            np=args.np,
            limit=args.limit,
            max_fes=args.max_fes,
            lb=args.lb,
            ub=args.ub,
            lam=args.lam,
            scout_policy=args.variant,
            seed=args.seed,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    outcome = solve(g, params)
    print(f"graph: {args.graph} n={g.n} m={g.m}")
    print(
        f"params: np={params.np} limit={params.limit} max_fes={params.max_fes} "
        f"lb={params.lb} ub={params.ub} lambda={params.lam} "
        f"variant={params.scout_policy} seed={params.seed}"
    )
    print(f"success: {'true' if outcome.success else 'false'}")
    print(f"best_fitness: {outcome.best_fitness}")
    print(f"evals_used: {outcome.evals_used}")
    print(f"evals_to_solution: {'' if outcome.evals_to_solution is None else outcome.evals_to_solution}")
    if args.coloring_out:
        try:
            with open(args.coloring_out, "w", encoding="utf-8", newline="\n") as fh:
                fh.writelines(f"{c}\n" for c in outcome.best_coloring.colors.tolist())
        except OSError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_IO
    return EXIT_OK if outcome.success else EXIT_NO_SOLUTION


def _cmd_bench(args) -> int:
    p_values = p_sweep(args.p_from, args.p_to, args.p_step)
    if not p_values:
        raise UsageError("empty p sweep")
    if args.runs < 1:
        raise UsageError("--runs must be at least 1")
    try:
        params = SolverParams(np=args.np, limit=args.limit, max_fes=args.max_fes)
        plan = ExperimentPlan(
            families=args.families,
            n=args.n,
            p_values=p_values,
            instance_seeds=args.seeds,
            runs_per_instance=args.runs,
            params=params,
            variants=args.variants,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    records = run_plan(plan, threads=args.threads)
    try:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(records_to_csv(records, include_timing=not args.no_timing))
        if args.aggregate_out:
            with open(args.aggregate_out, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(aggregates_to_csv(aggregate(records)))
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    print(f"wrote {len(records)} records to {args.out}")
    return EXIT_OK


def _cmd_report(args) -> int:
    try:
        with open(args.records_in, "r", encoding="utf-8") as fh:
            records = records_from_csv(fh.read())
        table = ablation_table(records)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    try:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(ablation_to_csv(table))
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    for summary in table.summaries:
        pct = "n/a" if summary.improvement_pct is None else f"{summary.improvement_pct:.2f}%"
        print(
            f"{summary.family}: avg_random={summary.avg_random:.3f} "
            f"avg_rwde={summary.avg_rwde:.3f} improvement={pct}"
        )
    return EXIT_OK


class UsageError(Exception):
    pass


_COMMANDS = {
    "gen": _cmd_gen,
    "solve": _cmd_solve,
    "bench": _cmd_bench,
    "report": _cmd_report,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except UsageError as exc:
        parser.error(str(exc))  # exits with status 2


if __name__ == "__main__":
    sys.exit(main())
