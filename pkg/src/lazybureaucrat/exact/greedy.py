"""Greedy exact solvers: latest-due-date rules and the EDD-minus-epsilon
construction for minimizing completed weight under preempt-I.
"""

from __future__ import annotations

from typing import Callable

from ..core import (
    Instance,
    Job,
    ObjectiveKind,
    PreconditionError,
    Regime,
    Schedule,
    critical_time,
    merge_slots,
)


def _slot_simulation(
    jobs: tuple[Job, ...],
    pick: Callable[[int, dict[int, int], list[Job]], Job | None],
    executable: Callable[[int, dict[int, int], Job], bool],
) -> tuple[tuple[tuple[int, int], ...], int, dict[int, int]]:
    """Run a per-slot policy until going home is legal.

    ``pick`` chooses among the currently executable jobs (never returns None
    when the list is nonempty); when nothing is executable the clock jumps to
    the next arrival, and the worker leaves once no arrival remains.
    """
    done: dict[int, int] = {job.id: 0 for job in jobs}
    slots: list[tuple[int, int]] = []
    now = 0
    while True:
        ready = [job for job in jobs if executable(now, done, job)]
        if ready:
            job = pick(now, done, ready)
            slots.append((now, job.id))
            done[job.id] += 1
            now += 1
            continue
        future = [
            job.arrival
            for job in jobs
            if job.arrival > now and done[job.id] < job.length
        ]
        if future:
            now = min(future)
            continue
        return tuple(slots), now, done


def solve_unit_ldd(instance: Instance) -> tuple[Schedule, int]:
    """Latest-due-date rule for unit jobs; optimal for total work.

    At each integer time with work available, run the startable job with the
    latest deadline (ties to the lowest id).
    """
    if instance.regime is not Regime.NONPREEMPTIVE:
        raise PreconditionError("solve_unit_ldd needs the nonpreemptive regime")
    jobs = instance.active_jobs()
    for job in jobs:
        if job.length != 1:
            raise PreconditionError(f"job {job.id} has length {job.length}, not 1")

    def executable(now: int, done: dict[int, int], job: Job) -> bool:
        return (
            done[job.id] == 0
            and job.arrival <= now <= critical_time(job)
        )

    def pick(now: int, done: dict[int, int], ready: list[Job]) -> Job:
        return min(ready, key=lambda j: (-j.deadline, j.id))

    slots, leave, _ = _slot_simulation(jobs, pick, executable)
    schedule = Schedule(segments=merge_slots(slots), leave_time=leave)
    return schedule, schedule.total_work


def solve_preempt1_ldd(
    instance: Instance, objective: ObjectiveKind
) -> tuple[Schedule, int]:
    """Latest-due-date rule under preempt-I; optimal for total work and
    makespan.

    Ties on equal deadlines go to the job with less remaining work, then the
    lower id, which keeps the rule deterministic.
    """
    if instance.regime is not Regime.PREEMPT_I:
        raise PreconditionError("solve_preempt1_ldd needs regime preempt1")
    if objective not in (ObjectiveKind.TOTAL_WORK, ObjectiveKind.MAKESPAN):
        raise PreconditionError(
            "latest-due-date is optimal for total work and makespan only"
        )
    jobs = instance.active_jobs()

    def executable(now: int, done: dict[int, int], job: Job) -> bool:
        return (
            done[job.id] < job.length
            and job.arrival <= now
            and now + 1 <= job.deadline
        )

    def pick(now: int, done: dict[int, int], ready: list[Job]) -> Job:
        return min(
            ready, key=lambda j: (-j.deadline, j.length - done[j.id], j.id)
        )

    slots, leave, _ = _slot_simulation(jobs, pick, executable)
    schedule = Schedule(segments=merge_slots(slots), leave_time=leave)
    value = (
        schedule.total_work
        if objective is ObjectiveKind.TOTAL_WORK
        else schedule.leave_time
    )
    return schedule, value


def solve_preempt1_min_weight(instance: Instance) -> tuple[Schedule, int]:
    """Minimize the weight of completed jobs under preempt-I.

    Earliest-due-date replay, but every job is set aside one grid unit short
    of completing.  The grid unit plays the role of an arbitrarily small
    preemption, which is sound once the grid is at least 3n times finer than
    the original data; hence the scale precondition.  Timeline components
    split on their own at gaps (the simulation idles only when nothing is
    executable).  Set-aside slivers whose windows are still open at the end
    of a component are forced to completion by the busy requirement; slivers
    whose deadlines passed stay safely unfinished.
    """
    if instance.regime is not Regime.PREEMPT_I:
        raise PreconditionError("solve_preempt1_min_weight needs regime preempt1")
    jobs = instance.active_jobs()
    if jobs and instance.scale < 3 * len(jobs):
        raise PreconditionError(
            f"scale {instance.scale} too small: need at least 3n = {3 * len(jobs)}"
        )

    def executable(now: int, done: dict[int, int], job: Job) -> bool:
        return (
            done[job.id] < job.length
            and job.arrival <= now
            and now + 1 <= job.deadline
        )

    def pick(now: int, done: dict[int, int], ready: list[Job]) -> Job:
        # Run earliest deadline first among jobs not yet cut to a sliver;
        # touch slivers only when nothing else is executable.
        fresh = [job for job in ready if job.length - done[job.id] >= 2]
        pool = fresh if fresh else ready
        return min(pool, key=lambda j: (j.deadline, j.id))

    slots, leave, done = _slot_simulation(jobs, pick, executable)
    schedule = Schedule(segments=merge_slots(slots), leave_time=leave)
    weight = sum(job.weight for job in jobs if done[job.id] == job.length)
    return schedule, weight
