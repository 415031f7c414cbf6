"""Exhaustive ground-truth optimizers over the busy-requirement transition
system, for small instances.

Both oracles branch over every choice the worker legally has, so their optima
are exact on the grid.  They exist solely to certify the polynomial solvers
and the gadget constructions; budgets keep them honest about their reach.
"""

from __future__ import annotations

from .core import (
    Instance,
    LbpError,
    ObjectiveKind,
    PreconditionError,
    Regime,
    Schedule,
    Segment,
    critical_time,
    merge_slots,
)

_INF = None  # sentinel for "no feasible continuation" in preempt-III search


class SearchBudgetExceeded(LbpError):
    """The instance is too large for exhaustive search."""


def subset_sum_reachable(values: list[int], target: int) -> bool:
    """Standard reachability table, independent of all scheduling code."""
    if target < 0:
        raise ValueError("target must be nonnegative")
    if any(v < 0 for v in values):
        raise ValueError("values must be nonnegative")
    reachable = 1  # bitset: bit s set iff sum s is reachable
    for value in values:
        reachable |= reachable << value
    return bool((reachable >> target) & 1)


def _start_cost(objective: ObjectiveKind, job) -> int:
    if objective is ObjectiveKind.TOTAL_WORK:
        return job.length
    if objective is ObjectiveKind.WEIGHTED_COMPLETED:
        return job.weight
    return 0


def _slot_cost(objective: ObjectiveKind, job, completes: bool) -> int:
    if objective is ObjectiveKind.TOTAL_WORK:
        return 1
    if objective is ObjectiveKind.WEIGHTED_COMPLETED:
        return job.weight if completes else 0
    return 0


def oracle_nonpreemptive(
    instance: Instance,
    objective: ObjectiveKind,
    *,
    max_jobs: int = 10,
    max_horizon: int = 40,
    prune: bool = True,
) -> tuple[int, Schedule]:
    """Exact optimum by branching over every legal job start.

    At each decision instant the worker must start some startable job; when
    none is startable, time advances to the next arrival (no decision exists
    in between).  Jobs run to completion.  ``prune`` enables a sound
    short-circuit: sibling branches are skipped once one attains the
    objective's lower bound from the current state, which cannot change the
    reported optimum.
    """
    if instance.regime is not Regime.NONPREEMPTIVE:
        raise PreconditionError("oracle_nonpreemptive needs the nonpreemptive regime")
    jobs = instance.active_jobs()
    if len(jobs) > max_jobs or instance.horizon > max_horizon:
        raise SearchBudgetExceeded(
            f"n={len(jobs)}, K={instance.horizon} exceeds "
            f"budget ({max_jobs}, {max_horizon})"
        )
    memo: dict[tuple[int, frozenset[int]], int] = {}

    def lower_bound(now: int) -> int:
        return now if objective is ObjectiveKind.MAKESPAN else 0

    def startable_at(now: int, done: frozenset[int]) -> list:
        return [
            j for j in jobs
            if j.id not in done and j.arrival <= now <= critical_time(j)
        ]

    def search(now: int, done: frozenset[int]) -> int:
        key = (now, done)
        if key in memo:
            return memo[key]
        startable = startable_at(now, done)
        if startable:
            best = None
            for job in startable:
                value = _start_cost(objective, job) + search(
                    now + job.length, done | {job.id}
                )
                if best is None or value < best:
                    best = value
                if prune and best == lower_bound(now):
                    break
        else:
            future = [j.arrival for j in jobs if j.id not in done and j.arrival > now]
            if future:
                best = search(min(future), done)
            else:
                best = now if objective is ObjectiveKind.MAKESPAN else 0
        memo[key] = best
        return best

    optimum = search(0, frozenset())

    # Rebuild one witness by re-walking the memoized choices.
    segments: list[Segment] = []
    now, done = 0, frozenset()
    while True:
        startable = sorted(startable_at(now, done), key=lambda j: j.id)
        if startable:
            target = search(now, done)
            for job in startable:
                tail = search(now + job.length, done | {job.id})
                if _start_cost(objective, job) + tail == target:
                    segments.append(Segment(job.id, now, now + job.length))
                    now, done = now + job.length, done | {job.id}
                    break
            else:  # pragma: no cover - memo consistency guard
                raise AssertionError("witness reconstruction lost the optimum")
            continue
        future = [j.arrival for j in jobs if j.id not in done and j.arrival > now]
        if future:
            now = min(future)
            continue
        break
    return optimum, Schedule(segments=tuple(segments), leave_time=now)


def oracle_preemptive(
    instance: Instance,
    objective: ObjectiveKind,
    *,
    max_jobs: int = 6,
    max_horizon: int = 24,
    max_states: int = 4_000_000,
) -> tuple[int, Schedule]:
    """Exact optimum by unit-slot search, memoized on (time, done-vector).

    At each slot the worker runs one executable job or, when nothing is
    executable, jumps to the next arrival.  The search leaves as soon as
    going home is legal.  Under preempt-III, branches in which a started job
    can no longer be completed are pruned, which is exactly the constraint's
    completion obligation.
    """
    if instance.regime not in (Regime.PREEMPT_I, Regime.PREEMPT_II, Regime.PREEMPT_III):
        raise PreconditionError("oracle_preemptive needs a preemptive regime")
    jobs = instance.active_jobs()
    if len(jobs) > max_jobs or instance.horizon > max_horizon:
        raise SearchBudgetExceeded(
            f"n={len(jobs)}, K={instance.horizon} exceeds "
            f"budget ({max_jobs}, {max_horizon})"
        )
    regime = instance.regime
    index = {job.id: pos for pos, job in enumerate(jobs)}
    memo: dict[tuple[int, tuple[int, ...]], int | None] = {}

    def executable_jobs(now: int, done: tuple[int, ...]) -> list:
        out = []
        for job in jobs:
            y = done[index[job.id]]
            if y >= job.length or job.arrival > now:
                continue
            if regime is Regime.PREEMPT_I:
                if now + 1 <= job.deadline:
                    out.append(job)
            else:  # II and III both require completability
                if now <= job.deadline - job.length + y:
                    out.append(job)
        return out

    def dead_started(now: int, done: tuple[int, ...]) -> bool:
        for job in jobs:
            y = done[index[job.id]]
            if 0 < y < job.length and now + (job.length - y) > job.deadline:
                return True
        return False

    def search(now: int, done: tuple[int, ...]) -> int | None:
        key = (now, done)
        if key in memo:
            return memo[key]
        if len(memo) > max_states:
            raise SearchBudgetExceeded(f"more than {max_states} search states")
        if regime is Regime.PREEMPT_III and dead_started(now, done):
            memo[key] = _INF
            return _INF
        running = executable_jobs(now, done)
        if running:
            best: int | None = _INF
            for job in running:
                pos = index[job.id]
                nxt = done[:pos] + (done[pos] + 1,) + done[pos + 1 :]
                tail = search(now + 1, nxt)
                if tail is _INF:
                    continue
                value = _slot_cost(objective, job, nxt[pos] == job.length) + tail
                if best is _INF or value < best:
                    best = value
        else:
            future = [
                j.arrival
                for j in jobs
                if j.arrival > now and done[index[j.id]] < j.length
            ]
            if future:
                best = search(min(future), done)
            else:
                best = now if objective is ObjectiveKind.MAKESPAN else 0
        memo[key] = best
        return best

    start = (0, tuple(0 for _ in jobs))
    optimum = search(*start)
    if optimum is _INF:  # pragma: no cover - cannot happen for valid instances
        raise AssertionError("no feasible schedule found")

    slots: list[tuple[int, int]] = []
    now, done = start
    while True:
        running = executable_jobs(now, done)
        if running:
            target = search(now, done)
            chosen = None
            for job in sorted(running, key=lambda j: j.id):
                pos = index[job.id]
                nxt = done[:pos] + (done[pos] + 1,) + done[pos + 1 :]
                tail = search(now + 1, nxt)
                if tail is _INF:
                    continue
                if _slot_cost(objective, job, nxt[pos] == job.length) + tail == target:
                    chosen = (job.id, nxt)
                    break
            if chosen is None:  # pragma: no cover - memo consistency guard
                raise AssertionError("witness reconstruction lost the optimum")
            slots.append((now, chosen[0]))
            done = chosen[1]
            now += 1
            continue
        future = [
            j.arrival for j in jobs if j.arrival > now and done[index[j.id]] < j.length
        ]
        if future:
            now = min(future)
            continue
        break
    return optimum, Schedule(segments=merge_slots(slots), leave_time=now)
