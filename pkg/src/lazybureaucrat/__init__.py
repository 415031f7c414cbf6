"""Lazy-bureaucrat scheduling: exact algorithms, oracles, and gadgets.

A single worker must stay busy whenever some job is executable, and wants to
work as little (or leave as early, or complete as little weight) as possible.
This package provides the domain model, a feasibility validator, exact
solvers for the tractable cases, brute-force oracles for small instances,
and generators for the hardness-reduction instances.
"""

from .core import (
    Instance,
    Job,
    LbpError,
    ObjectiveKind,
    ParseError,
    PreconditionError,
    Regime,
    Schedule,
    Segment,
    adjusted_critical_time,
    critical_time,
    evaluate,
    merge_slots,
    parse_instance,
    parse_schedule,
    rescale,
    serialize_instance,
    serialize_schedule,
)
from .exact import (
    DPTable,
    ShortJobsInfeasible,
    StateBudgetExceeded,
    TentativeSchedule,
    build_tentative_schedule,
    classify_jobs,
    decide_go_home_by,
    gap_constraints,
    infer_ratio_bounds,
    minimize_makespan_common_deadline,
    realize_schedule,
    schedule_by_t,
    solve_bounded_ratio_dp,
    solve_common_release_dp,
    solve_narrow_window_dp,
    solve_preempt1_ldd,
    solve_preempt1_min_weight,
    solve_unit_ldd,
)
from .feasibility import (
    ExecState,
    Violation,
    ViolationKind,
    executable_set,
    forced_gaps,
    validate,
)
from .gadgets import (
    PROFILES,
    gen_3partition,
    gen_bounded_delta,
    gen_limiting_example,
    gen_preempt2_subset_sum,
    gen_random,
    gen_subset_sum_nonpreemptive,
)
from .oracle import (
    SearchBudgetExceeded,
    oracle_nonpreemptive,
    oracle_preemptive,
    subset_sum_reachable,
)

__all__ = [
    "DPTable",
    "ExecState",
    "Instance",
    "Job",
    "LbpError",
    "ObjectiveKind",
    "PROFILES",
    "ParseError",
    "PreconditionError",
    "Regime",
    "Schedule",
    "SearchBudgetExceeded",
    "Segment",
    "ShortJobsInfeasible",
    "StateBudgetExceeded",
    "TentativeSchedule",
    "Violation",
    "ViolationKind",
    "adjusted_critical_time",
    "build_tentative_schedule",
    "classify_jobs",
    "critical_time",
    "decide_go_home_by",
    "evaluate",
    "executable_set",
    "forced_gaps",
    "gap_constraints",
    "gen_3partition",
    "gen_bounded_delta",
    "gen_limiting_example",
    "gen_preempt2_subset_sum",
    "gen_random",
    "gen_subset_sum_nonpreemptive",
    "infer_ratio_bounds",
    "merge_slots",
    "minimize_makespan_common_deadline",
    "oracle_nonpreemptive",
    "oracle_preemptive",
    "parse_instance",
    "parse_schedule",
    "realize_schedule",
    "rescale",
    "schedule_by_t",
    "serialize_instance",
    "serialize_schedule",
    "solve_bounded_ratio_dp",
    "solve_common_release_dp",
    "solve_narrow_window_dp",
    "solve_preempt1_ldd",
    "solve_preempt1_min_weight",
    "solve_unit_ldd",
    "subset_sum_reachable",
    "validate",
]

__version__ = "0.1.0"
