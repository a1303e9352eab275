"""Experiment harness: instance sweeps, repeated seeded runs, SR/AES stats.

A plan enumerates (family, p, instance seed, variant, run index) in that
nesting order; each combination generates its instance, derives a per-run
solver seed, and solves.  Runs are independent, so they can execute in a
process pool; records always come back in plan order, making output
deterministic regardless of worker count.  SR is the fraction of
successful runs per (family, n, p, variant) group and AES the mean
evaluations-to-solution over the successful ones.
"""

from __future__ import annotations

import csv
import io
import os
import time
from dataclasses import dataclass, replace
from multiprocessing import Pool

import numpy as np

from .decoder import _decode_arrays
from .generator import FAMILIES, InstanceSpec, generate
from .graph import Graph
from .seeds import run_seed
from .solver import SCOUT_POLICIES, SCOUT_RANDOM, SCOUT_RWDE, SolverParams, solve

RECORD_FIELDS = (
    "family",
    "n",
    "p",
    "instance_seed",
    "variant",
    "run",
    "success",
    "evals_to_solution",
    "best_fitness",
    "evals_used",
    "wall_time_ms",
)
AGGREGATE_FIELDS = ("family", "n", "p", "variant", "sr", "aes")
ABLATION_FIELDS = ("family", "p", "sr_random", "sr_rwde", "improvement_pct")


@dataclass(frozen=True)
class ExperimentPlan:
    families: tuple[str, ...]
    n: int
    p_values: tuple[float, ...]
    instance_seeds: tuple[int, ...]
    runs_per_instance: int
    params: SolverParams
    variants: tuple[str, ...] = SCOUT_POLICIES

    def __post_init__(self):
        object.__setattr__(self, "families", tuple(self.families))
        object.__setattr__(self, "p_values", tuple(self.p_values))
        object.__setattr__(self, "instance_seeds", tuple(self.instance_seeds))
        object.__setattr__(self, "variants", tuple(self.variants))
        for name in ("families", "p_values", "instance_seeds", "variants"):
            if not getattr(self, name):
                raise ValueError(f"{name} must be non-empty")
        for family in self.families:
            if family not in FAMILIES:
                raise ValueError(f"unknown family {family!r}")
        for variant in self.variants:
            if variant not in SCOUT_POLICIES:
                raise ValueError(f"unknown variant {variant!r}")
        if self.runs_per_instance < 1:
            raise ValueError("runs_per_instance must be at least 1")

    @property
    def total_runs(self) -> int:
        return (
            len(self.families)
            * len(self.p_values)
            * len(self.instance_seeds)
            * len(self.variants)
            * self.runs_per_instance
        )


@dataclass(frozen=True)
class RunRecord:
    family: str
    n: int
    p: float
    instance_seed: int
    variant: str
    run_index: int
    success: bool
    evals_to_solution: int | None
    best_fitness: int
    evals_used: int
    wall_time: float  # seconds


@dataclass(frozen=True)
class AggregateStats:
    family: str
    n: int
    p: float
    variant: str
    sr: float
    aes: float | None


@dataclass(frozen=True)
class AblationRow:
    family: str
    p: float
    sr_random: float
    sr_rwde: float


@dataclass(frozen=True)
class AblationSummary:
    family: str
    avg_random: float
    avg_rwde: float
    improvement_pct: float | None  # None when the random baseline never succeeds


@dataclass(frozen=True)
class AblationTable:
    rows: tuple[AblationRow, ...]
    summaries: tuple[AblationSummary, ...]


def _execute(task) -> RunRecord:
    family, n, p, instance_seed, variant, run_index, graph, base_params = task
    params = replace(base_params, scout_policy=variant, seed=run_seed(instance_seed, run_index))
    start = time.perf_counter()
    outcome = solve(graph, params)
    wall = time.perf_counter() - start
    return RunRecord(
        family=family,
        n=n,
        p=p,
        instance_seed=instance_seed,
        variant=variant,
        run_index=run_index,
        success=outcome.success,
        evals_to_solution=outcome.evals_to_solution,
        best_fitness=outcome.best_fitness,
        evals_used=outcome.evals_used,
        wall_time=wall,
    )


def run_plan(plan: ExperimentPlan, threads: int | None = 1) -> list[RunRecord]:
    """Execute every run in the plan; records come back in plan order."""
    graphs: dict[tuple[str, float, int], Graph] = {}
    for family in plan.families:
        for p in plan.p_values:
            for seed in plan.instance_seeds:
                graphs[(family, p, seed)] = generate(InstanceSpec(plan.n, family, p, seed))
    tasks = [
        (family, plan.n, p, seed, variant, run, graphs[(family, p, seed)], plan.params)
        for family in plan.families
        for p in plan.p_values
        for seed in plan.instance_seeds
        for variant in plan.variants
        for run in range(plan.runs_per_instance)
    ]
    if threads is None:
        threads = os.cpu_count() or 1
    threads = max(1, min(threads, len(tasks)))
    if threads == 1:
        return [_execute(task) for task in tasks]
    # Warm the decode kernel before forking so workers inherit it compiled.
    first = next(iter(graphs.values()))
    _decode_arrays(first, np.zeros(first.n))
    with Pool(processes=threads) as pool:
        return pool.map(_execute, tasks, chunksize=1)


def aggregate(records) -> list[AggregateStats]:
    """SR and AES per (family, n, p, variant) group, in sorted group order."""
    records = list(records)
    if not records:
        raise ValueError("no records to aggregate")
    groups: dict[tuple, list[RunRecord]] = {}
    for rec in records:
        groups.setdefault((rec.family, rec.n, rec.p, rec.variant), []).append(rec)
    out = []
    for key in sorted(groups):
        members = groups[key]
        wins = [r.evals_to_solution for r in members if r.success]
        out.append(
            AggregateStats(
                family=key[0],
                n=key[1],
                p=key[2],
                variant=key[3],
                sr=len(wins) / len(members),
                aes=(sum(wins) / len(wins)) if wins else None,
            )
        )
    return out


def ablation_table(records) -> AblationTable:
    """Random-vs-rwde SR comparison per (family, p), with per-family averages."""
    stats = aggregate(records)
    cells: dict[tuple[str, float], dict[str, float]] = {}
    for st in stats:
        cells.setdefault((st.family, st.p), {})[st.variant] = st.sr
    rows = []
    for (family, p), by_variant in sorted(cells.items()):
        for variant in SCOUT_POLICIES:
            if variant not in by_variant:
                raise ValueError(f"missing variant {variant!r} for family={family} p={p}")
        rows.append(AblationRow(family, p, by_variant[SCOUT_RANDOM], by_variant[SCOUT_RWDE]))
    summaries = []
    for family in sorted({row.family for row in rows}):
        own = [row for row in rows if row.family == family]
        avg_random = sum(r.sr_random for r in own) / len(own)
        avg_rwde = sum(r.sr_rwde for r in own) / len(own)
        improvement = None
        if avg_random > 0:
            improvement = (avg_rwde - avg_random) / avg_random * 100.0
        summaries.append(AblationSummary(family, avg_random, avg_rwde, improvement))
    return AblationTable(tuple(rows), tuple(summaries))


def records_to_csv(records, include_timing: bool = True) -> str:
    """Canonical record CSV (LF line endings, empty field for no solution)."""
    fields = RECORD_FIELDS if include_timing else RECORD_FIELDS[:-1]
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(fields)
    for rec in records:
        row = [
            rec.family,
            rec.n,
            f"{rec.p:.6f}",
            rec.instance_seed,
            rec.variant,
            rec.run_index,
            1 if rec.success else 0,
            "" if rec.evals_to_solution is None else rec.evals_to_solution,
            rec.best_fitness,
            rec.evals_used,
        ]
        if include_timing:
            row.append(int(round(rec.wall_time * 1000)))
        writer.writerow(row)
    return buf.getvalue()


def records_from_csv(text: str) -> list[RunRecord]:
    """Parse a record CSV produced by :func:`records_to_csv`."""
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise ValueError("row 1: empty CSV") from None
    if tuple(header) not in (RECORD_FIELDS, RECORD_FIELDS[:-1]):
        raise ValueError(f"row 1: unexpected header {header!r}")
    timed = tuple(header) == RECORD_FIELDS
    records = []
    for rownum, row in enumerate(reader, start=2):
        if not row:
            continue
        if len(row) != len(header):
            raise ValueError(f"row {rownum}: expected {len(header)} fields, got {len(row)}")
        try:
            records.append(
                RunRecord(
                    family=row[0],
                    n=int(row[1]),
                    p=float(row[2]),
                    instance_seed=int(row[3]),
                    variant=row[4],
                    run_index=int(row[5]),
                    success=bool(int(row[6])),
                    evals_to_solution=int(row[7]) if row[7] else None,
                    best_fitness=int(row[8]),
                    evals_used=int(row[9]),
                    wall_time=(int(row[10]) / 1000.0) if timed else 0.0,
                )
            )
        except ValueError as exc:
            raise ValueError(f"row {rownum}: {exc}") from None
    return records


def aggregates_to_csv(stats) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(AGGREGATE_FIELDS)
    for st in stats:
        writer.writerow(
            [
                st.family,
                st.n,
                f"{st.p:.6f}",
                st.variant,
                f"{st.sr:.6f}",
                "" if st.aes is None else f"{st.aes:.1f}",
            ]
        )
    return buf.getvalue()


def ablation_to_csv(table: AblationTable) -> str:
    """Per-(family, p) SR columns plus an avg row carrying the improvement."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(ABLATION_FIELDS)
    for family in sorted({row.family for row in table.rows}):
        for row in table.rows:
            if row.family == family:
                writer.writerow(
                    [family, f"{row.p:.6f}", f"{row.sr_random:.6f}", f"{row.sr_rwde:.6f}", ""]
                )
        summary = next(s for s in table.summaries if s.family == family)
        writer.writerow(
            [
                family,
                "avg",
                f"{summary.avg_random:.6f}",
                f"{summary.avg_rwde:.6f}",
                "" if summary.improvement_pct is None else f"{summary.improvement_pct:.2f}",
            ]
        )
    return buf.getvalue()
