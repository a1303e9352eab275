import random

import pytest

from beecolor import (
    AggregateStats,
    ExperimentPlan,
    RunRecord,
    SolverParams,
    ablation_table,
    ablation_to_csv,
    aggregate,
    aggregates_to_csv,
    records_from_csv,
    records_to_csv,
    run_plan,
    run_seed,
)


def tiny_plan(**kwargs):
    defaults = dict(
        families=("uniform",),
        n=12,
        p_values=(0.3,),
        instance_seeds=(1,),
        runs_per_instance=2,
        params=SolverParams(np=5, limit=10, max_fes=300, seed=0),
        variants=("random", "rwde"),
    )
    defaults.update(kwargs)
    return ExperimentPlan(**defaults)


def synthetic_record(family="uniform", p=0.5, variant="rwde", run_index=0, success=True,
                     ets=100, best=7, seed=1, n=10):
    return RunRecord(
        family=family, n=n, p=p, instance_seed=seed, variant=variant,
        run_index=run_index, success=success,
        evals_to_solution=ets if success else None,
        best_fitness=0 if success else best,
        evals_used=300, wall_time=0.25,
    )


def records_with_sr(family, p, variant, sr, runs=1000):
    wins = round(sr * runs)
    return [
        synthetic_record(family=family, p=p, variant=variant, run_index=i,
                         success=(i < wins), ets=50 + i, best=0 if i < wins else 7)
        for i in range(runs)
    ]


class TestPlan:
    def test_paper_scale_cardinality(self):
        plan = tiny_plan(
            families=("uniform", "equipartite", "flat"),
            p_values=tuple(round(0.008 + i * 0.001, 3) for i in range(21)),
            instance_seeds=tuple(range(1, 11)),
            runs_per_instance=25,
            variants=("rwde",),
        )
        assert len(plan.p_values) == 21
        assert plan.total_runs == 3 * 21 * 10 * 25

    @pytest.mark.parametrize(
        "kwargs",
        [
            dict(families=()),
            dict(p_values=()),
            dict(instance_seeds=()),
            dict(variants=()),
            dict(runs_per_instance=0),
            dict(families=("ring",)),
            dict(variants=("walk",)),
        ],
    )
    def test_rejects_bad_plans(self, kwargs):
        with pytest.raises(ValueError):
            tiny_plan(**kwargs)


class TestRunPlan:
    def test_cardinality_and_order(self):
        plan = tiny_plan(runs_per_instance=3, variants=("rwde",))
        records = run_plan(plan)
        assert len(records) == 3
        assert [r.run_index for r in records] == [0, 1, 2]
        assert len({run_seed(r.instance_seed, r.run_index) for r in records}) == 3

    def test_deterministic(self):
        a = run_plan(tiny_plan())
        b = run_plan(tiny_plan())
        strip = lambda recs: [
            (r.family, r.n, r.p, r.instance_seed, r.variant, r.run_index,
             r.success, r.evals_to_solution, r.best_fitness, r.evals_used)
            for r in recs
        ]
        assert strip(a) == strip(b)

    def test_parallel_matches_serial(self):
        plan = tiny_plan(runs_per_instance=2)
        serial = records_to_csv(run_plan(plan, threads=1), include_timing=False)
        parallel = records_to_csv(run_plan(plan, threads=2), include_timing=False)
        assert serial == parallel

    def test_variants_share_run_seed(self):
        # Same (instance, run) solved under both scout policies starts from
        # the same seed; on an instance solved before any scout event the
        # two records coincide exactly.
        plan = tiny_plan(p_values=(0.2,), runs_per_instance=1)
        records = run_plan(plan)
        by_variant = {r.variant: r for r in records}
        assert by_variant["random"].success and by_variant["rwde"].success
        assert by_variant["random"].evals_to_solution == by_variant["rwde"].evals_to_solution

    def test_seed_distinctness_across_runs_and_instances(self):
        seeds = {
            run_seed(instance_seed, run)
            for instance_seed in range(1, 11)
            for run in range(25)
        }
        assert len(seeds) == 250


class TestAggregate:
    def test_sr_and_aes_arithmetic(self):
        records = [
            synthetic_record(run_index=0, success=True, ets=100),
            synthetic_record(run_index=1, success=True, ets=200),
            synthetic_record(run_index=2, success=True, ets=300),
            synthetic_record(run_index=3, success=False),
        ]
        (stats,) = aggregate(records)
        assert stats.sr == 0.75
        assert stats.aes == 200

    def test_all_failures_have_no_aes(self):
        records = [synthetic_record(run_index=i, success=False) for i in range(4)]
        (stats,) = aggregate(records)
        assert stats.sr == 0.0
        assert stats.aes is None

    def test_groups_by_family_n_p_variant(self):
        records = [
            synthetic_record(family="uniform", p=0.1),
            synthetic_record(family="uniform", p=0.2),
            synthetic_record(family="flat", p=0.1, variant="random"),
        ]
        stats = aggregate(records)
        assert len(stats) == 3
        assert [s.family for s in stats] == ["flat", "uniform", "uniform"]

    def test_order_insensitive(self):
        records = [
            synthetic_record(run_index=i, success=(i % 3 > 0), ets=10 * i + 10, p=p)
            for i in range(9)
            for p in (0.1, 0.2)
        ]
        shuffled = records[:]
        random.Random(4).shuffle(shuffled)
        assert aggregate(records) == aggregate(shuffled)

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            aggregate([])


class TestAblation:
    def test_improvement_from_known_averages(self):
        # Averages 0.299 vs 0.577 yield a 92.98% lift; 0.310 vs 0.603 yield 94.52%.
        records = []
        records += records_with_sr("uniform", 0.015, "random", 0.299)
        records += records_with_sr("uniform", 0.015, "rwde", 0.577)
        records += records_with_sr("equipartite", 0.015, "random", 0.310)
        records += records_with_sr("equipartite", 0.015, "rwde", 0.603)
        table = ablation_table(records)
        by_family = {s.family: s for s in table.summaries}
        assert by_family["uniform"].improvement_pct == pytest.approx(92.98, abs=0.005)
        assert by_family["equipartite"].improvement_pct == pytest.approx(94.52, abs=0.005)

    def test_identical_variants_zero_improvement(self):
        records = records_with_sr("flat", 0.013, "random", 0.5) + records_with_sr(
            "flat", 0.013, "rwde", 0.5
        )
        table = ablation_table(records)
        assert table.summaries[0].improvement_pct == pytest.approx(0.0)

    def test_rows_pair_both_variants(self):
        records = records_with_sr("flat", 0.013, "random", 0.25, runs=4)
        records += records_with_sr("flat", 0.013, "rwde", 0.75, runs=4)
        table = ablation_table(records)
        (row,) = table.rows
        assert (row.sr_random, row.sr_rwde) == (0.25, 0.75)

    def test_missing_variant_rejected(self):
        records = records_with_sr("flat", 0.013, "rwde", 0.5, runs=4)
        with pytest.raises(ValueError, match="missing variant"):
            ablation_table(records)

    def test_zero_baseline_has_no_percentage(self):
        records = records_with_sr("flat", 0.013, "random", 0.0, runs=4)
        records += records_with_sr("flat", 0.013, "rwde", 0.5, runs=4)
        table = ablation_table(records)
        assert table.summaries[0].improvement_pct is None


class TestCsv:
    def test_record_header_and_formatting(self):
        records = [
            synthetic_record(success=True, ets=123),
            synthetic_record(run_index=1, success=False),
        ]
        text = records_to_csv(records)
        lines = text.splitlines()
        assert lines[0] == (
            "family,n,p,instance_seed,variant,run,success,"
            "evals_to_solution,best_fitness,evals_used,wall_time_ms"
        )
        assert lines[1] == "uniform,10,0.500000,1,rwde,0,1,123,0,300,250"
        assert lines[2] == "uniform,10,0.500000,1,rwde,1,0,,7,300,250"
        assert text.endswith("\n") and "\r" not in text

    def test_round_trip(self):
        records = [
            synthetic_record(success=True, ets=123),
            synthetic_record(run_index=1, success=False),
        ]
        parsed = records_from_csv(records_to_csv(records))
        assert parsed == records

    def test_timing_free_round_trip(self):
        records = [synthetic_record(success=True, ets=9)]
        parsed = records_from_csv(records_to_csv(records, include_timing=False))
        assert parsed[0].evals_to_solution == 9
        assert parsed[0].wall_time == 0.0

    def test_malformed_rows_carry_row_numbers(self):
        good = records_to_csv([synthetic_record()])
        with pytest.raises(ValueError, match="row 1"):
            records_from_csv("a,b\n1,2\n")
        broken = good + "uniform,10,0.5\n"
        with pytest.raises(ValueError, match="row 3"):
            records_from_csv(broken)
        bad_int = good.replace(",300,", ",many,")
        with pytest.raises(ValueError, match="row 2"):
            records_from_csv(bad_int)

    def test_aggregate_csv_formatting(self):
        stats = [
            AggregateStats("flat", 500, 0.013, "rwde", 1.0, 12345.5),
            AggregateStats("flat", 500, 0.014, "rwde", 0.0, None),
        ]
        text = aggregates_to_csv(stats)
        assert text.splitlines() == [
            "family,n,p,variant,sr,aes",
            "flat,500,0.013000,rwde,1.000000,12345.5",
            "flat,500,0.014000,rwde,0.000000,",
        ]

    def test_ablation_csv_shape(self):
        records = records_with_sr("uniform", 0.013, "random", 0.25, runs=4)
        records += records_with_sr("uniform", 0.013, "rwde", 0.75, runs=4)
        records += records_with_sr("uniform", 0.014, "random", 0.25, runs=4)
        records += records_with_sr("uniform", 0.014, "rwde", 0.25, runs=4)
        text = ablation_to_csv(ablation_table(records))
        assert text.splitlines() == [
            "family,p,sr_random,sr_rwde,improvement_pct",
            "uniform,0.013000,0.250000,0.750000,",
            "uniform,0.014000,0.250000,0.250000,",
            "uniform,avg,0.250000,0.500000,100.00",
        ]
