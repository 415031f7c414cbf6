"""Exact polynomial and pseudo-polynomial solvers.

Every solver returns a validator-feasible schedule together with its
objective value; each raises PreconditionError outside its applicability.
"""

from .common_deadline import (
    DPTable,
    ShortJobsInfeasible,
    TentativeSchedule,
    build_tentative_schedule,
    classify_jobs,
    decide_go_home_by,
    gap_constraints,
    minimize_makespan_common_deadline,
    realize_schedule,
    schedule_by_t,
)
from .dp import (
    StateBudgetExceeded,
    infer_ratio_bounds,
    solve_bounded_ratio_dp,
    solve_common_release_dp,
    solve_narrow_window_dp,
)
from .greedy import solve_preempt1_ldd, solve_preempt1_min_weight, solve_unit_ldd

__all__ = [
    "DPTable",
    "ShortJobsInfeasible",
    "StateBudgetExceeded",
    "TentativeSchedule",
    "build_tentative_schedule",
    "classify_jobs",
    "decide_go_home_by",
    "gap_constraints",
    "infer_ratio_bounds",
    "minimize_makespan_common_deadline",
    "realize_schedule",
    "schedule_by_t",
    "solve_bounded_ratio_dp",
    "solve_common_release_dp",
    "solve_narrow_window_dp",
    "solve_preempt1_ldd",
    "solve_preempt1_min_weight",
    "solve_unit_ldd",
]
