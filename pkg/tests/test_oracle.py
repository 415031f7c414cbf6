from __future__ import annotations

import pytest

from lazybureaucrat import (
    Instance,
    Job,
    ObjectiveKind,
    Regime,
    SearchBudgetExceeded,
    evaluate,
    gen_random,
    gen_subset_sum_nonpreemptive,
    oracle_nonpreemptive,
    oracle_preemptive,
    rescale,
    subset_sum_reachable,
    validate,
)
from conftest import mk_instance


def test_subset_sum_reachable():
    assert subset_sum_reachable([1, 2, 3], 3)
    assert not subset_sum_reachable([2, 4], 3)
    assert not subset_sum_reachable([51, 51, 51, 48], 100)
    assert subset_sum_reachable([], 0)


def test_worked_example_values(go_home_example):
    work, witness = oracle_preemptive(go_home_example, ObjectiveKind.TOTAL_WORK)
    assert work == 4
    assert validate(go_home_example, witness) == []
    makespan, _ = oracle_preemptive(go_home_example, ObjectiveKind.MAKESPAN)
    assert makespan == 9
    # Completing only one short job (weight 2) is achievable: split it around
    # the long job and let everything else die.
    weighted, wwit = oracle_preemptive(go_home_example, ObjectiveKind.WEIGHTED_COMPLETED)
    assert weighted == 2
    assert validate(go_home_example, wwit) == []


def test_nonpreemptive_subset_sum_gadgets():
    instance, cert = gen_subset_sum_nonpreemptive([1, 2, 3], 3)
    assert cert
    optimum, witness = oracle_nonpreemptive(instance, ObjectiveKind.TOTAL_WORK)
    assert optimum == 3
    assert validate(instance, witness) == []
    long_id = len(instance.jobs) - 1
    assert all(seg.job_id != long_id for seg in witness.segments)

    instance, cert = gen_subset_sum_nonpreemptive([2, 4], 3)
    assert not cert
    optimum, witness = oracle_nonpreemptive(instance, ObjectiveKind.TOTAL_WORK)
    long_length = instance.jobs[-1].length
    assert optimum >= long_length
    assert any(seg.job_id == len(instance.jobs) - 1 for seg in witness.segments)


def test_single_job_forced():
    instance = mk_instance([(0, 9, 4)], Regime.NONPREEMPTIVE)
    assert oracle_nonpreemptive(instance, ObjectiveKind.TOTAL_WORK)[0] == 4


def test_preempt3_equals_nonpreemptive_on_common_arrivals():
    for seed in range(10):
        base = gen_random(4, 10, Regime.NONPREEMPTIVE, "common-arrival", seed)
        pre3 = Instance(jobs=base.jobs, regime=Regime.PREEMPT_III)
        for objective in ObjectiveKind:
            a = oracle_nonpreemptive(base, objective)[0]
            b = oracle_preemptive(pre3, objective)[0]
            assert a == b, (seed, objective)


def test_optimum_invariant_under_job_reordering():
    instance = mk_instance(
        [(0, 9, 3), (1, 7, 2), (0, 6, 2), (4, 12, 3)], Regime.PREEMPT_II
    )
    permuted = mk_instance(
        [(4, 12, 3), (0, 6, 2), (1, 7, 2), (0, 9, 3)], Regime.PREEMPT_II
    )
    for objective in ObjectiveKind:
        assert (
            oracle_preemptive(instance, objective)[0]
            == oracle_preemptive(permuted, objective)[0]
        )


def test_pruning_soundness():
    for seed in range(25):
        instance = gen_random(5, 12, Regime.NONPREEMPTIVE, "general", seed)
        for objective in ObjectiveKind:
            with_prune = oracle_nonpreemptive(instance, objective, prune=True)[0]
            without = oracle_nonpreemptive(instance, objective, prune=False)[0]
            assert with_prune == without


def test_scale_doubling_doubles_time_objectives_under_preempt1():
    for seed in range(8):
        instance = gen_random(3, 8, Regime.PREEMPT_I, "general", seed)
        doubled = rescale(instance, 2)
        for objective in (ObjectiveKind.TOTAL_WORK, ObjectiveKind.MAKESPAN):
            base = oracle_preemptive(instance, objective)[0]
            fine = oracle_preemptive(doubled, objective, max_horizon=48)[0]
            assert fine == 2 * base, (seed, objective)


def test_budgets_are_enforced():
    big = mk_instance([(0, 50, 1)], Regime.NONPREEMPTIVE)
    with pytest.raises(SearchBudgetExceeded):
        oracle_nonpreemptive(big, ObjectiveKind.TOTAL_WORK)
    many = mk_instance([(0, 20, 2)] * 7, Regime.PREEMPT_I)
    with pytest.raises(SearchBudgetExceeded):
        oracle_preemptive(many, ObjectiveKind.TOTAL_WORK)


def test_witnesses_validate_and_match_reported_value():
    for seed in range(15):
        instance = gen_random(4, 12, Regime.PREEMPT_II, "general", seed)
        for objective in ObjectiveKind:
            value, witness = oracle_preemptive(instance, objective)
            assert validate(instance, witness) == []
            assert evaluate(instance, witness, objective) == value
