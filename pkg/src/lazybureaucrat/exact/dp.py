"""Nonpreemptive dynamic programs: narrow windows, bounded ratios, and a
common release time.

All three walk a DAG of decision states and return a feasible schedule that
is optimal for the requested objective.  Gaps in time are taken in one jump
since no decision exists while nothing is executable.
"""

from __future__ import annotations

from fractions import Fraction

from ..core import (
    Instance,
    Job,
    LbpError,
    ObjectiveKind,
    PreconditionError,
    Regime,
    Schedule,
    Segment,
    critical_time,
)


class StateBudgetExceeded(LbpError):
    """The bounded-ratio state space outgrew the configured budget."""


def _empty_result() -> tuple[Schedule, int]:
    return Schedule(segments=(), leave_time=0), 0


def _start_cost(objective: ObjectiveKind, job: Job) -> int:
    if objective is ObjectiveKind.TOTAL_WORK:
        return job.length
    if objective is ObjectiveKind.WEIGHTED_COMPLETED:
        return job.weight
    return 0


def solve_narrow_window_dp(
    instance: Instance, objective: ObjectiveKind
) -> tuple[Schedule, int]:
    """Shortest path over completion states for windows under twice the length.

    With every window shorter than twice its job, two jobs can be ordered in
    at most one way, so a state needs only the job just completed and the
    clock: any job startable at that moment is guaranteed untouched.
    Transitions follow the busy requirement: some startable job must begin at
    every completion with work available, otherwise the clock jumps to the
    next arrival.
    """
    if instance.regime is not Regime.NONPREEMPTIVE:
        raise PreconditionError("solve_narrow_window_dp needs the nonpreemptive regime")
    jobs = instance.active_jobs()
    for job in jobs:
        if job.deadline - job.arrival >= 2 * job.length:
            raise PreconditionError(
                f"job {job.id} window {job.deadline - job.arrival} is not "
                f"under twice its length {job.length}"
            )
    if not jobs:
        return _empty_result()

    memo: dict[tuple[int, int], int] = {}

    def startable(after_id: int, now: int) -> list[Job]:
        return [
            j for j in jobs
            if j.id != after_id and j.arrival <= now <= critical_time(j)
        ]

    def best_from(job_id: int, fin: int) -> int:
        key = (job_id, fin)
        if key in memo:
            return memo[key]
        nxt = startable(job_id, fin)
        if nxt:
            value = min(
                _start_cost(objective, j) + best_from(j.id, fin + j.length)
                for j in nxt
            )
        else:
            future = [j.arrival for j in jobs if j.arrival > fin]
            if future:
                at = min(future)
                value = min(
                    _start_cost(objective, j) + best_from(j.id, at + j.length)
                    for j in jobs
                    if j.arrival == at
                )
            else:
                value = fin if objective is ObjectiveKind.MAKESPAN else 0
        memo[key] = value
        return value

    first_arrival = min(j.arrival for j in jobs)
    starters = [j for j in jobs if j.arrival == first_arrival]
    optimum = min(
        _start_cost(objective, j) + best_from(j.id, first_arrival + j.length)
        for j in starters
    )

    segments: list[Segment] = []

    def follow(job_id: int, fin: int) -> None:
        target = best_from(job_id, fin)
        nxt = startable(job_id, fin)
        if nxt:
            start_at = fin
        else:
            future = [j.arrival for j in jobs if j.arrival > fin]
            if not future:
                return
            start_at = min(future)
            nxt = [j for j in jobs if j.arrival == start_at]
        for j in sorted(nxt, key=lambda j: j.id):
            if _start_cost(objective, j) + best_from(j.id, start_at + j.length) == target:
                segments.append(Segment(j.id, start_at, start_at + j.length))
                follow(j.id, start_at + j.length)
                return
        raise AssertionError("witness reconstruction lost the optimum")

    for j in sorted(starters, key=lambda j: j.id):
        fin = first_arrival + j.length
        if _start_cost(objective, j) + best_from(j.id, fin) == optimum:
            segments.append(Segment(j.id, first_arrival, fin))
            follow(j.id, fin)
            break
    schedule = Schedule(segments=tuple(segments), leave_time=schedule_end(segments))
    return schedule, optimum


def schedule_end(segments: list[Segment]) -> int:
    return max((seg.end for seg in segments), default=0)


def infer_ratio_bounds(instance: Instance) -> tuple[Fraction, Fraction]:
    """Smallest (R, Delta) for which the bounded-ratio preconditions hold.

    R is padded by one grid unit over the largest window/length ratio because
    the precondition is strict.
    """
    jobs = instance.active_jobs()
    if not jobs:
        return Fraction(1), Fraction(1)
    r = max(Fraction(j.deadline - j.arrival + 1, j.length) for j in jobs)
    lengths = [j.length for j in jobs]
    delta = Fraction(max(lengths), min(lengths))
    return r, delta


def solve_bounded_ratio_dp(
    instance: Instance,
    r_bound: Fraction | int,
    delta_bound: Fraction | int,
    objective: ObjectiveKind,
    *,
    max_states: int = 200_000,
) -> tuple[Schedule, int]:
    """Shortest path over (time, executed-jobs-still-startable) states.

    The state keeps exactly the executed jobs whose start windows are still
    open; everything else about the past is irrelevant to the future.  The
    window and length ratio bounds keep that set small; they are validated
    against the instance, and the state count is capped by ``max_states``
    (exceeding it raises rather than truncating).
    """
    if instance.regime is not Regime.NONPREEMPTIVE:
        raise PreconditionError("solve_bounded_ratio_dp needs the nonpreemptive regime")
    r_bound = Fraction(r_bound)
    delta_bound = Fraction(delta_bound)
    jobs = instance.active_jobs()
    for job in jobs:
        if Fraction(job.deadline - job.arrival) >= r_bound * job.length:
            raise PreconditionError(
                f"job {job.id} violates window < R * length with R = {r_bound}"
            )
    if jobs:
        lengths = [j.length for j in jobs]
        if Fraction(max(lengths), min(lengths)) > delta_bound:
            raise PreconditionError(
                f"length ratio exceeds Delta = {delta_bound}"
            )
    if not jobs:
        return _empty_result()

    memo: dict[tuple[int, frozenset[int]], int] = {}

    def live_after(executed: frozenset[int], extra: int | None, now: int) -> frozenset[int]:
        pool = executed | {extra} if extra is not None else executed
        return frozenset(
            job_id for job_id in pool if critical_time(instance.job(job_id)) >= now
        )

    def startable(now: int, live: frozenset[int]) -> list[Job]:
        return [
            j for j in jobs
            if j.id not in live and j.arrival <= now <= critical_time(j)
        ]

    def best_from(now: int, live: frozenset[int]) -> int:
        key = (now, live)
        if key in memo:
            return memo[key]
        if len(memo) > max_states:
            raise StateBudgetExceeded(f"more than {max_states} DP states")
        ready = startable(now, live)
        if ready:
            value = min(
                _start_cost(objective, j)
                + best_from(now + j.length, live_after(live, j.id, now + j.length))
                for j in ready
            )
        else:
            future = [j.arrival for j in jobs if j.arrival > now]
            if future:
                at = min(future)
                value = best_from(at, live_after(live, None, at))
            else:
                value = now if objective is ObjectiveKind.MAKESPAN else 0
        memo[key] = value
        return value

    first_arrival = min(j.arrival for j in jobs)
    optimum = best_from(first_arrival, frozenset())

    segments: list[Segment] = []
    now, live = first_arrival, frozenset()
    while True:
        ready = sorted(startable(now, live), key=lambda j: j.id)
        if ready:
            target = best_from(now, live)
            for j in ready:
                fin = now + j.length
                nxt_live = live_after(live, j.id, fin)
                if _start_cost(objective, j) + best_from(fin, nxt_live) == target:
                    segments.append(Segment(j.id, now, fin))
                    now, live = fin, nxt_live
                    break
            else:  # pragma: no cover - memo consistency guard
                raise AssertionError("witness reconstruction lost the optimum")
            continue
        future = [j.arrival for j in jobs if j.arrival > now]
        if not future:
            break
        now = min(future)
        live = live_after(live, None, now)
    schedule = Schedule(segments=tuple(segments), leave_time=now)
    return schedule, optimum


def solve_common_release_dp(
    instance: Instance, objective: ObjectiveKind
) -> tuple[Schedule, int]:
    """Take-or-skip DP in earliest-due-date order for a common release time.

    With every job available from the start the machine never idles before
    leaving, so a schedule is a deadline-feasible prefix-packed subset whose
    finish time strictly exceeds the critical time of every skipped job
    (otherwise a skipped job would still be startable at quitting time).
    Some optimal schedule executes its chosen set in EDD order, so the DP
    scans jobs by deadline and tracks the running finish time; skip branches
    carry the pending requirement forward by filtering on the final finish.
    """
    if instance.regime is not Regime.NONPREEMPTIVE:
        raise PreconditionError("solve_common_release_dp needs the nonpreemptive regime")
    jobs = instance.active_jobs()
    arrivals = {j.arrival for j in jobs}
    if len(arrivals) > 1:
        raise PreconditionError("all arrivals must be equal")
    if not jobs:
        return _empty_result()
    release = arrivals.pop()
    order = sorted(jobs, key=lambda j: (j.deadline, j.id))
    n = len(order)

    memo: dict[tuple[int, int], dict[int, int]] = {}

    def suffix(i: int, fin: int) -> dict[int, int]:
        """Map final-finish-time -> min suffix cost, for decisions from i on."""
        key = (i, fin)
        if key in memo:
            return memo[key]
        if i == n:
            memo[key] = {fin: 0}
            return memo[key]
        job = order[i]
        out: dict[int, int] = {}
        if fin + job.length <= job.deadline:
            for final, cost in suffix(i + 1, fin + job.length).items():
                cost += _start_cost(objective, job)
                if final not in out or cost < out[final]:
                    out[final] = cost
        threshold = critical_time(job) + 1
        for final, cost in suffix(i + 1, fin).items():
            if final >= threshold and (final not in out or cost < out[final]):
                out[final] = cost
        memo[key] = out
        return out

    options = suffix(0, release)
    if not options:
        raise AssertionError("no feasible subset; the busy requirement always admits one")
    if objective is ObjectiveKind.MAKESPAN:
        final = min(options)
        optimum = final
    else:
        optimum = min(options.values())
        final = min(f for f, c in options.items() if c == optimum)

    chosen: list[Job] = []
    fin = release
    remaining = 0 if objective is ObjectiveKind.MAKESPAN else optimum
    for i, job in enumerate(order):
        # Prefer skipping (the lazier branch) whenever it stays optimal.
        if final >= critical_time(job) + 1 and suffix(i + 1, fin).get(final) == remaining:
            continue
        cost_here = _start_cost(objective, job)
        if (
            fin + job.length <= job.deadline
            and suffix(i + 1, fin + job.length).get(final) == remaining - cost_here
        ):
            chosen.append(job)
            fin += job.length
            remaining -= cost_here
            continue
        raise AssertionError("witness reconstruction lost the optimum")

    segments: list[Segment] = []
    cursor = release
    for job in chosen:
        segments.append(Segment(job.id, cursor, cursor + job.length))
        cursor += job.length
    schedule = Schedule(segments=tuple(segments), leave_time=cursor)
    value = optimum if objective is not ObjectiveKind.MAKESPAN else cursor
    return schedule, value
