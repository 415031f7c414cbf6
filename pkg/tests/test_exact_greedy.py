from __future__ import annotations

import pytest

from lazybureaucrat import (
    Instance,
    ObjectiveKind,
    PreconditionError,
    Regime,
    evaluate,
    gen_random,
    oracle_nonpreemptive,
    oracle_preemptive,
    rescale,
    solve_preempt1_ldd,
    solve_preempt1_min_weight,
    solve_unit_ldd,
    validate,
)
from conftest import mk_instance


class TestUnitLdd:
    def test_latest_deadline_survives(self):
        instance = mk_instance([(0, 1, 1), (0, 3, 1)], Regime.NONPREEMPTIVE)
        schedule, work = solve_unit_ldd(instance)
        assert work == 1 == oracle_nonpreemptive(instance, ObjectiveKind.TOTAL_WORK)[0]
        assert validate(instance, schedule) == []

    def test_single_job_is_forced(self):
        instance = mk_instance([(0, 5, 1)], Regime.NONPREEMPTIVE)
        assert solve_unit_ldd(instance)[1] == 1

    def test_staggered_arrivals_force_both(self):
        instance = mk_instance([(0, 2, 1), (1, 2, 1)], Regime.NONPREEMPTIVE)
        assert solve_unit_ldd(instance)[1] == 2

    def test_non_unit_job_rejected(self):
        instance = mk_instance([(0, 5, 2)], Regime.NONPREEMPTIVE)
        with pytest.raises(PreconditionError):
            solve_unit_ldd(instance)

    def test_wrong_regime_rejected(self):
        instance = mk_instance([(0, 5, 1)], Regime.PREEMPT_I)
        with pytest.raises(PreconditionError):
            solve_unit_ldd(instance)

    def test_matches_oracle_on_seeded_corpus(self):
        for seed in range(60):
            instance = gen_random(
                2 + seed % 6, 6 + seed % 9, Regime.NONPREEMPTIVE, "unit-length", seed
            )
            schedule, work = solve_unit_ldd(instance)
            assert validate(instance, schedule) == []
            assert work == oracle_nonpreemptive(instance, ObjectiveKind.TOTAL_WORK)[0]


class TestPreempt1Ldd:
    def test_busy_requirement_forces_full_window(self, go_home_example):
        # Under in-window executability nothing can idle before 10 here, so
        # the optimum is 10 for both time objectives (unlike preempt-II).
        instance = Instance(jobs=go_home_example.jobs, regime=Regime.PREEMPT_I)
        for objective in (ObjectiveKind.TOTAL_WORK, ObjectiveKind.MAKESPAN):
            schedule, value = solve_preempt1_ldd(instance, objective)
            assert validate(instance, schedule) == []
            assert value == 10 == oracle_preemptive(instance, objective)[0]

    def test_single_job(self):
        instance = mk_instance([(0, 5, 3)], Regime.PREEMPT_I)
        schedule, work = solve_preempt1_ldd(instance, ObjectiveKind.TOTAL_WORK)
        assert work == 3
        assert schedule.leave_time == 3

    def test_short_filler_then_partial_long(self):
        instance = mk_instance([(0, 5, 5), (0, 10, 1)], Regime.PREEMPT_I)
        _, work = solve_preempt1_ldd(instance, ObjectiveKind.TOTAL_WORK)
        assert work == 5 == oracle_preemptive(instance, ObjectiveKind.TOTAL_WORK)[0]

    def test_rejects_other_objectives_and_regimes(self):
        instance = mk_instance([(0, 5, 3)], Regime.PREEMPT_I)
        with pytest.raises(PreconditionError):
            solve_preempt1_ldd(instance, ObjectiveKind.WEIGHTED_COMPLETED)
        with pytest.raises(PreconditionError):
            solve_preempt1_ldd(
                mk_instance([(0, 5, 3)], Regime.PREEMPT_II), ObjectiveKind.TOTAL_WORK
            )

    def test_matches_oracle_on_seeded_corpus(self):
        for seed in range(40):
            n = 2 + seed % 4
            horizon = 6 + seed % 7
            instance = gen_random(n, horizon, Regime.PREEMPT_I, "general", seed)
            for objective in (ObjectiveKind.TOTAL_WORK, ObjectiveKind.MAKESPAN):
                schedule, value = solve_preempt1_ldd(instance, objective)
                assert validate(instance, schedule) == []
                assert value == oracle_preemptive(instance, objective)[0], (
                    seed,
                    objective,
                )


class TestPreempt1MinWeight:
    def test_two_jobs_one_completion_forced(self):
        instance = mk_instance([(0, 3, 3), (0, 6, 3)], Regime.PREEMPT_I, scale=6)
        schedule, weight = solve_preempt1_min_weight(instance)
        assert validate(instance, schedule) == []
        assert weight == 3
        assert weight == oracle_preemptive(instance, ObjectiveKind.WEIGHTED_COMPLETED)[0]

    def test_single_job_filling_its_window_completes(self):
        instance = mk_instance([(0, 4, 4)], Regime.PREEMPT_I, scale=3)
        _, weight = solve_preempt1_min_weight(instance)
        assert weight == 4
        assert weight == oracle_preemptive(instance, ObjectiveKind.WEIGHTED_COMPLETED)[0]

    def test_deadline_cut_completes_nothing(self):
        instance = mk_instance([(0, 6, 4), (0, 6, 4)], Regime.PREEMPT_I, scale=6)
        schedule, weight = solve_preempt1_min_weight(instance)
        assert weight == 0
        assert validate(instance, schedule) == []

    def test_empty_instance(self):
        instance = Instance(jobs=(), regime=Regime.PREEMPT_I, scale=1)
        schedule, weight = solve_preempt1_min_weight(instance)
        assert weight == 0 and schedule.segments == ()

    def test_scale_precondition(self):
        instance = mk_instance([(0, 4, 2), (0, 9, 3)], Regime.PREEMPT_I, scale=2)
        with pytest.raises(PreconditionError):
            solve_preempt1_min_weight(instance)

    def test_matches_quantized_oracle_on_small_corpus(self):
        mismatches = []
        for seed in range(12):
            base = gen_random(2, 6, Regime.PREEMPT_I, "general", seed)
            instance = rescale(base, 6)  # 3n for n = 2
            schedule, weight = solve_preempt1_min_weight(instance)
            assert validate(instance, schedule) == []
            truth = oracle_preemptive(
                instance, ObjectiveKind.WEIGHTED_COMPLETED, max_horizon=48
            )[0]
            if weight != truth:
                mismatches.append((seed, weight, truth))
        assert mismatches == []
