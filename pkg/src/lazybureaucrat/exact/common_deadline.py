"""Polynomial decision procedure for leaving work under preempt-II when all
deadlines coincide, plus the makespan-minimizing wrapper.

Write ``x = D - T`` for target leave time ``T`` and common deadline ``D``.
Going home exactly at ``T`` requires every job to be completed or dead at
``T``: a job of length at most ``x`` (short) is startable from scratch at
``T``, so it must be completed; a longer job may instead be left with at
most ``length - x - 1`` units done, which pins its adjusted critical time
strictly before ``T``.  (The cap is one unit below ``length - x`` because
executability uses the closed comparison ``now <= adjusted critical``; this
one-grid-unit boundary is exactly why optima can improve as the grid is
refined, and the makespan wrapper reports that through its ``attained``
flag.)

The pipeline mirrors the classic four steps: strip forced gaps, check the
short jobs fit, lay out a tentative maximal-partial-work schedule to read
off gap constraints, then run the take-or-skip table over arrival-ordered
jobs and realize the answer by exact unit tiling.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from ..core import (
    Instance,
    Job,
    LbpError,
    PreconditionError,
    Regime,
    Schedule,
    critical_time,
    merge_slots,
    rescale,
)
from ..feasibility import forced_gaps, validate
from ..oracle import SearchBudgetExceeded


class ShortJobsInfeasible(LbpError):
    """The jobs that must be completed by T cannot all fit by T."""


def _require_preempt2_common_deadline(instance: Instance) -> int:
    if instance.regime is not Regime.PREEMPT_II:
        raise PreconditionError("this procedure needs regime preempt2")
    deadline = instance.common_deadline()
    if deadline is None:
        raise PreconditionError("all deadlines must be equal")
    return deadline


def _reduced_jobs(instance: Instance) -> tuple[list[Job], int]:
    """Active jobs arriving at or after the end of the last forced gap."""
    _, tau_prime = forced_gaps(instance)
    jobs = [j for j in instance.active_jobs() if j.arrival >= tau_prime]
    jobs.sort(key=lambda j: (j.arrival, j.id))
    return jobs, tau_prime


def partial_cap(job: Job, x: int) -> int:
    """Most work a long job may receive while staying dead at the target."""
    return job.length - x - 1


def classify_jobs(instance: Instance, t_target: int) -> tuple[list[int], list[int], int]:
    """Split jobs into short (must complete) and long relative to x = D - T."""
    deadline = _require_preempt2_common_deadline(instance)
    if t_target > deadline:
        raise PreconditionError(f"target {t_target} exceeds the deadline {deadline}")
    x = deadline - t_target
    shorts = [j.id for j in instance.active_jobs() if j.length <= x]
    longs = [j.id for j in instance.active_jobs() if j.length > x]
    return shorts, longs, x


@dataclass
class TentativeSchedule:
    """Arrival-ordered maximal no-commitment allocation (an accounting device,
    not necessarily an executable schedule)."""

    pieces: list[tuple[int, int, int]]  # (job_id, start, end); end == start ok
    gaps: list[tuple[int, int]]
    start: int
    end: int

    @property
    def gapless(self) -> bool:
        return not any(b > a for a, b in self.gaps)


def _shorts_finish(jobs: list[Job], x: int, start: int) -> int:
    """Work-conserving finish time of all short jobs from ``start``."""
    busy = start
    for job in sorted((j for j in jobs if j.length <= x), key=lambda j: (j.arrival, j.id)):
        busy = max(busy, job.arrival) + job.length
    return busy


def _tentative(jobs: list[Job], x: int, start: int) -> TentativeSchedule:
    pieces: list[tuple[int, int, int]] = []
    gaps: list[tuple[int, int]] = []
    cursor = start
    for job in jobs:
        amount = job.length if job.length <= x else partial_cap(job, x)
        begin = max(cursor, job.arrival)
        if begin > cursor:
            gaps.append((cursor, begin))
        pieces.append((job.id, begin, begin + amount))
        cursor = begin + amount
    return TentativeSchedule(pieces=pieces, gaps=gaps, start=start, end=cursor)


def build_tentative_schedule(instance: Instance, t_target: int) -> TentativeSchedule:
    """Step 2 and 3: verify the short jobs fit by T, then allocate every job
    its maximum no-commitment amount in arrival order.

    Raises ShortJobsInfeasible when the must-complete set cannot be done by T.
    """
    shorts, _, x = classify_jobs(instance, t_target)
    jobs, tau_prime = _reduced_jobs(instance)
    if t_target < tau_prime:
        raise PreconditionError(
            f"target {t_target} lies before the end of the last forced gap {tau_prime}"
        )
    finish = _shorts_finish(jobs, x, tau_prime)
    if finish > t_target:
        raise ShortJobsInfeasible(
            f"short jobs finish at {finish}, after the target {t_target}"
        )
    return _tentative(jobs, x, tau_prime)


def gap_constraints(
    tentative: TentativeSchedule, instance: Instance, x: int
) -> dict[int, int]:
    """Required completions among arrival-predecessors, per sorted position.

    A gap of mass G before the i-th arrival must be filled with extra work,
    and completing one long predecessor frees exactly x + 1 units over its
    no-commitment cap, so at least ceil(G / (x + 1)) of them must complete.
    """
    jobs, _ = _reduced_jobs(instance)
    needs: dict[int, int] = {}
    gap_mass = 0
    cursor = tentative.start
    for position, (job_id, begin, end) in enumerate(tentative.pieces):
        gap_mass += begin - cursor
        cursor = end
        if gap_mass > 0:
            needs[position] = -(-gap_mass // (x + 1))  # ceil
    # positions are indices into the arrival-sorted reduced job list
    assert len(tentative.pieces) == len(jobs)
    return needs


@dataclass
class DPTable:
    """Earliest-completion table T(m, k) with back-pointers.

    ``cells[(m, k)]`` is the earliest time by which exactly m jobs among the
    first k (arrival order) can be completed subject to the target, the gap
    constraints, and every short job being completed; None means infeasible.
    """

    t_target: int
    deadline: int
    x: int
    tau_prime: int
    order: tuple[int, ...]
    shorts: tuple[int, ...]
    longs: tuple[int, ...]
    gap_bounds: dict[int, int]
    needs: dict[int, int]
    cells: dict[tuple[int, int], int | None] = field(default_factory=dict)
    choice: dict[tuple[int, int], str] = field(default_factory=dict)

    def completions(self, m: int) -> list[int]:
        """Back-track the completed set for a finite cell (m, len(order))."""
        out: list[int] = []
        k = len(self.order)
        while k > 0:
            if self.choice[(m, k)] == "take":
                out.append(self.order[k - 1])
                m -= 1
            k -= 1
        out.reverse()
        return out


def schedule_by_t(instance: Instance, t_target: int) -> DPTable:
    """Fill the take-or-skip table over arrival-ordered jobs.

    Taking job k completes it at max(arrival + length, previous + length);
    skipping is legal only for long jobs.  Cells that would complete fewer
    jobs than a prefix's gap constraint demands are struck to infeasible.
    """
    deadline = _require_preempt2_common_deadline(instance)
    tentative = build_tentative_schedule(instance, t_target)
    shorts, longs, x = classify_jobs(instance, t_target)
    jobs, tau_prime = _reduced_jobs(instance)
    needs = gap_constraints(tentative, instance, x)
    n = len(jobs)

    gap_bounds: dict[int, int] = {}
    mass = 0
    cursor = tentative.start
    for position, (_, begin, end) in enumerate(tentative.pieces):
        mass += begin - cursor
        cursor = end
        gap_bounds[position] = mass

    table = DPTable(
        t_target=t_target,
        deadline=deadline,
        x=x,
        tau_prime=tau_prime,
        order=tuple(j.id for j in jobs),
        shorts=tuple(i for i in shorts if instance.job(i).arrival >= tau_prime),
        longs=tuple(i for i in longs if instance.job(i).arrival >= tau_prime),
        gap_bounds=gap_bounds,
        needs=needs,
    )
    cells = table.cells
    cells[(0, 0)] = tau_prime
    for m in range(1, n + 1):
        cells[(m, 0)] = None
    if needs.get(0):  # a gap before the first arrival could never be filled
        cells[(0, 0)] = None
    for k in range(1, n + 1):
        job = jobs[k - 1]
        is_long = job.length > x
        for m in range(0, n + 1):
            alpha = cells.get((m, k - 1)) if is_long else None
            beta = None
            if m >= 1 and cells.get((m - 1, k - 1)) is not None:
                finish = max(job.arrival + job.length, cells[(m - 1, k - 1)] + job.length)
                if finish <= t_target:
                    beta = finish
            if beta is not None and (alpha is None or beta < alpha):
                cells[(m, k)] = beta
                table.choice[(m, k)] = "take"
            elif alpha is not None:
                cells[(m, k)] = alpha
                table.choice[(m, k)] = "skip"
            else:
                cells[(m, k)] = None
        required = needs.get(k, 0)
        for m in range(0, min(required, n + 1)):
            cells[(m, k)] = None
            table.choice.pop((m, k), None)
    return table


def _hall_ok(completed: list[list[int]], t0: int, end: int) -> bool:
    """Whether the remaining completed-job units fit into [t0, end) at all.

    Unit jobs with releases and deadlines are feasible iff every
    release/deadline window has enough room (checked over all pairs).
    """
    releases = sorted({t0} | {c[0] for c in completed if c[2] > 0})
    deadlines = sorted({end} | {c[1] for c in completed if c[2] > 0})
    for rho in releases:
        for delta in deadlines:
            low = max(rho, t0)
            if delta <= low:
                continue
            load = sum(c[2] for c in completed if c[0] >= rho and c[1] <= delta)
            if load > delta - low:
                return False
    return True


def _plain_tile(
    start: int,
    end: int,
    completed: list[list[int]],
    streams: list[list[int]],
    budget: int,
) -> list[tuple[int, int]] | None:
    """Tile [start, end) exactly with completed-job units and up to ``budget``
    units of no-commitment stream work.

    completed rows: [release, deadline, remaining, job_id].
    stream rows: [release, critical, cap, used, job_id]; the k-th unit of a
    stream must run by critical + k - 1, which keeps the owning job's
    adjusted critical time short of the target.  Streams are preferred
    (earliest pace deadline first) whenever the completed work still fits in
    what remains; that greedy order is exchange-safe.
    """
    completed = [row[:] for row in completed]
    streams = [row[:] for row in streams]
    used_budget = 0
    slots: list[tuple[int, int]] = []
    for sigma in range(start, end):
        pick = None
        if used_budget < budget:
            for s in streams:
                if s[0] <= sigma and s[3] < s[2] and s[1] + s[3] >= sigma:
                    if pick is None or (s[1] + s[3], s[4]) < (pick[1] + pick[3], pick[4]):
                        pick = s
        if pick is not None and _hall_ok(completed, sigma + 1, end):
            pick[3] += 1
            used_budget += 1
            slots.append((sigma, pick[4]))
            continue
        ready = [c for c in completed if c[0] <= sigma and c[2] > 0]
        if not ready:
            return None
        unit = min(ready, key=lambda c: (c[1], c[0], c[3]))
        if sigma >= unit[1]:
            return None
        unit[2] -= 1
        slots.append((sigma, unit[3]))
    if used_budget != budget or any(c[2] for c in completed):
        return None
    return slots


def _canonical_tile(
    start: int,
    end: int,
    completed: list[list[int]],
    streams: list[list[int]],
    budget: int,
) -> list[tuple[int, int]] | None:
    """Like _plain_tile but greedily prefers the earliest-arrived job at each
    slot, falling back to feasibility-preserving choices.  Produces schedules
    whose completed jobs and whose partially-run jobs each appear in arrival
    order."""
    completed = [row[:] for row in completed]
    streams = [row[:] for row in streams]
    used_budget = 0
    slots: list[tuple[int, int]] = []
    for sigma in range(start, end):
        candidates: list[tuple[int, int, str, list[int]]] = []
        for c in completed:
            if c[0] <= sigma and c[2] > 0 and sigma < c[1]:
                candidates.append((c[0], c[3], "completed", c))
        if used_budget < budget:
            for s in streams:
                if s[0] <= sigma and s[3] < s[2] and s[1] + s[3] >= sigma:
                    candidates.append((s[0], s[4], "stream", s))
        committed = False
        for _, _, kind, row in sorted(candidates, key=lambda c: (c[0], c[1])):
            if kind == "completed":
                row[2] -= 1
                rest = _plain_tile(
                    sigma + 1, end, completed, streams, budget - used_budget
                )
                if rest is not None:
                    slots.append((sigma, row[3]))
                    committed = True
                    break
                row[2] += 1
            else:
                row[3] += 1
                rest = _plain_tile(
                    sigma + 1, end, completed, streams, budget - used_budget - 1
                )
                if rest is not None:
                    slots.append((sigma, row[4]))
                    used_budget += 1
                    committed = True
                    break
                row[3] -= 1
        if not committed:
            return None
    if used_budget != budget or any(c[2] for c in completed):
        return None
    return slots


def _prefix_slots(instance: Instance, tau_prime: int) -> list[tuple[int, int]]:
    """Arrival-order completion of everything arriving before tau_prime.

    Before each forced gap the worker keeps pace with the arrived work, so
    this greedy completes every early job and idles exactly in the forced
    gaps."""
    slots: list[tuple[int, int]] = []
    cursor = 0
    for job in sorted(
        (j for j in instance.active_jobs() if j.arrival < tau_prime),
        key=lambda j: (j.arrival, j.id),
    ):
        begin = max(cursor, job.arrival)
        for t in range(begin, begin + job.length):
            slots.append((t, job.id))
        cursor = begin + job.length
    return slots


_CANONICAL_SLOT_LIMIT = 400


def _tile_region(
    instance: Instance,
    t_target: int,
    tau_prime: int,
    x: int,
    completion_ids: list[int],
    reduced: list[Job],
) -> Schedule | None:
    """Try to realize a gapless [tau_prime, t_target) region completing
    exactly ``completion_ids`` and filling the rest with capped stream work."""
    total = sum(instance.job(i).length for i in completion_ids)
    budget = (t_target - tau_prime) - total
    if budget < 0:
        return None
    chosen = set(completion_ids)
    streams = []
    for job in reduced:
        if job.id in chosen:
            continue
        cap = min(partial_cap(job, x), job.length - 1)
        if cap >= 1:
            streams.append([job.arrival, critical_time(job), cap, 0, job.id])
    if budget > sum(s[2] for s in streams):
        return None
    completed = [
        [instance.job(i).arrival, t_target, instance.job(i).length, i]
        for i in completion_ids
    ]
    region = _plain_tile(tau_prime, t_target, completed, streams, budget)
    if region is None:
        return None
    arrivals = {j.arrival for j in reduced}
    if len(arrivals) > 1 and t_target - tau_prime <= _CANONICAL_SLOT_LIMIT:
        canonical = _canonical_tile(tau_prime, t_target, completed, streams, budget)
        if canonical is not None:
            region = canonical
    slots = _prefix_slots(instance, tau_prime) + region
    return Schedule(segments=merge_slots(slots), leave_time=t_target)


def realize_schedule(
    instance: Instance, t_target: int, table: DPTable
) -> Schedule | None:
    """Turn a feasible table into a validator-feasible schedule.

    Walks m upward from the smallest finite cell; each candidate completed
    set is tiled exactly, with incomplete jobs capped strictly below
    length - x so nothing is resumable at the target.  The tiler places a
    completed job's final unit last on its own (stream pace deadlines cannot
    reach the final slot), which is the sliver rule; a candidate that cannot
    be tiled escalates to one more completion.
    """
    reduced = [instance.job(i) for i in table.order]
    n = len(reduced)
    if n == 0:
        if t_target < table.tau_prime:
            return None
        slots = _prefix_slots(instance, table.tau_prime)
        return Schedule(segments=merge_slots(slots), leave_time=t_target)
    for m in range(1, n + 1):
        if table.cells.get((m, n)) is None:
            continue
        completion_ids = table.completions(m)
        schedule = _tile_region(
            instance, t_target, table.tau_prime, table.x, completion_ids, reduced
        )
        if schedule is not None:
            return schedule
    return None


_FALLBACK_SUBSET_LIMIT = 13
_COMMON_ARRIVAL_JOB_LIMIT = 10


def _exhaustive_exact_at(
    instance: Instance, t_target: int, table: DPTable
) -> Schedule | None:
    """Last-resort exact search over completion sets (small job counts only).

    The table's back-pointers commit to one completed set per m; when none of
    those tiles, some other same-size set still might.  Short jobs are always
    in; subsets of the long jobs are enumerated outright.
    """
    reduced = [instance.job(i) for i in table.order]
    shorts = [j for j in reduced if j.length <= table.x]
    longs = [j for j in reduced if j.length > table.x]
    if len(longs) > _FALLBACK_SUBSET_LIMIT:
        return None
    base = sum(j.length for j in shorts)
    room = t_target - table.tau_prime
    for mask in range(1 << len(longs)):
        extra = [longs[i] for i in range(len(longs)) if mask >> i & 1]
        completion_ids = sorted(j.id for j in shorts + extra)
        if not completion_ids:
            continue
        if base + sum(j.length for j in extra) > room:
            continue
        schedule = _tile_region(
            instance, t_target, table.tau_prime, table.x, completion_ids, reduced
        )
        if schedule is not None:
            return schedule
    return None


def _exact_leave_at(instance: Instance, t_target: int) -> Schedule | None:
    """Gapless schedule leaving exactly at ``t_target``, or None."""
    try:
        table = schedule_by_t(instance, t_target)
    except ShortJobsInfeasible:
        return None
    reduced = [instance.job(i) for i in table.order]
    if reduced and t_target == table.tau_prime:
        return None  # something arrives exactly then; leaving is illegal
    schedule = realize_schedule(instance, t_target, table)
    if schedule is None:
        schedule = _exhaustive_exact_at(instance, t_target, table)
    if schedule is not None:
        leftover = validate(instance, schedule)
        if leftover:  # pragma: no cover - internal bug guard
            raise AssertionError(f"realized schedule is infeasible: {leftover[0]}")
    return schedule


def _min_makespan_core(instance: Instance) -> tuple[int, Schedule] | None:
    deadline = _require_preempt2_common_deadline(instance)
    _, tau_prime = forced_gaps(instance)
    for t in range(tau_prime, deadline + 1):
        schedule = _exact_leave_at(instance, t)
        if schedule is not None:
            return t, schedule
    return None


def _common_arrival_exact(instance: Instance, t_target: int) -> Schedule | None:
    """Exact leave-time decision for a common arrival and arbitrary deadlines.

    With one arrival the machine never idles before leaving, so a leave time
    F is feasible iff some completed set plus capped stream work tiles
    [arrival, F) exactly with everything else dead at F.  Exponential in the
    job count; guarded by a budget since the general question is hard.
    """
    jobs = [j for j in sorted(instance.active_jobs(), key=lambda j: j.id)]
    if len(jobs) > _COMMON_ARRIVAL_JOB_LIMIT:
        raise SearchBudgetExceeded(
            f"{len(jobs)} jobs is past the exhaustive decision budget "
            f"({_COMMON_ARRIVAL_JOB_LIMIT}); no polynomial procedure exists here"
        )
    release = jobs[0].arrival
    for leave in range(release + 1, t_target + 1):
        forced = []
        optional = []
        caps: dict[int, int] = {}
        for job in jobs:
            cap = min(job.length - job.deadline + leave - 1, job.length - 1)
            caps[job.id] = cap
            (forced if cap < 0 else optional).append(job)
        base = sum(j.length for j in forced)
        if base > leave - release:
            continue
        for mask in range(1 << len(optional)):
            extra = [optional[i] for i in range(len(optional)) if mask >> i & 1]
            chosen = forced + extra
            if not chosen:
                continue
            total = sum(j.length for j in chosen)
            budget = (leave - release) - total
            if budget < 0:
                continue
            streams = [
                [j.arrival, critical_time(j), caps[j.id], 0, j.id]
                for j in jobs
                if j not in chosen and caps[j.id] >= 1
            ]
            if budget > sum(s[2] for s in streams):
                continue
            completed = [
                [j.arrival, min(j.deadline, leave), j.length, j.id] for j in chosen
            ]
            region = _plain_tile(release, leave, completed, streams, budget)
            if region is None:
                continue
            schedule = Schedule(segments=merge_slots(region), leave_time=t_target)
            leftover = validate(instance, schedule)
            if leftover:  # pragma: no cover - internal bug guard
                raise AssertionError(f"fallback schedule is infeasible: {leftover[0]}")
            return schedule
    return None


def decide_go_home_by(instance: Instance, t_target: int) -> Schedule | None:
    """YES iff a validator-feasible schedule with this exact leave time exists.

    An idle tail in front of the leave time is legal whenever nothing is or
    becomes executable, so the answer is monotone in the target and the
    search only needs the least feasible leave time.  Common deadlines use
    the polynomial pipeline; instances with one arrival time and arbitrary
    deadlines (the hard direction) fall back to a budget-guarded exhaustive
    decision.
    """
    if instance.regime is not Regime.PREEMPT_II:
        raise PreconditionError("decide_go_home_by needs regime preempt2")
    if not isinstance(t_target, int) or t_target < 0:
        raise PreconditionError("the target leave time must be a grid time")
    if not instance.active_jobs():
        return Schedule(segments=(), leave_time=t_target)
    if instance.common_deadline() is None:
        if instance.common_arrival() is None:
            raise PreconditionError(
                "need a common deadline, or a common arrival for the fallback"
            )
        return _common_arrival_exact(instance, t_target)
    _, tau_prime = forced_gaps(instance)
    if t_target < tau_prime:
        raise PreconditionError(
            f"target {t_target} lies inside or before a forced gap ending at {tau_prime}"
        )
    deadline = instance.common_deadline()
    for t in range(tau_prime, min(t_target, deadline) + 1):
        core = _exact_leave_at(instance, t)
        if core is not None:
            return Schedule(segments=core.segments, leave_time=t_target)
    return None


def minimize_makespan_common_deadline(
    instance: Instance, *, probe_cap: int | None = None
) -> tuple[int, Schedule, bool]:
    """Least feasible leave time, with a grid-refinement attainment probe.

    Returns (T*, schedule, attained).  ``attained`` is False when doubling
    the grid (up to scale 3n, the point past which one grid unit is a safe
    epsilon) strictly improves the optimum in original units, which signals
    that the true optimum is only a limit.
    """
    found = _min_makespan_core(instance)
    if found is None:  # pragma: no cover - leaving at the deadline always works
        raise AssertionError("no feasible leave time up to the common deadline")
    t_star, schedule = found
    n = len(instance.active_jobs())
    if n == 0:
        return t_star, schedule, True
    cap = probe_cap if probe_cap is not None else max(3 * n, 2 * instance.scale)
    attained = True
    factor = 2
    best = Fraction(t_star, instance.scale)
    while instance.scale * factor <= cap:
        probe = rescale(instance, factor)
        probe_found = _min_makespan_core(probe)
        assert probe_found is not None
        value = Fraction(probe_found[0], probe.scale)
        if value < best:
            attained = False
            break
        factor *= 2
    return t_star, schedule, attained
