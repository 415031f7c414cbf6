"""Executability rules, the busy-requirement validator, and forced gaps.

The worker must be working on an executable job whenever one exists; idling
and going home are legal only against an empty executable set.  What counts
as executable depends on the regime:

* nonpreemptive: an untouched job startable now (``arrival <= now <=
  critical``), or the single job currently mid-run;
* preempt-I: any arrived, unfinished job whose window still has room for one
  more unit of work;
* preempt-II: additionally the job must still be completable, i.e. ``now <=
  adjusted critical time`` (closed comparison);
* preempt-III: completability as in preempt-II (running a job that can no
  longer finish would break the must-finish rule), and the obligation to
  finish whatever was started is a whole-schedule property checked by
  ``validate``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .core import (
    Instance,
    Job,
    Regime,
    Schedule,
    adjusted_critical_time,
    critical_time,
)


class ViolationKind(Enum):
    IDLE_WHILE_EXECUTABLE = "idle-while-executable"
    RAN_INEXECUTABLE = "ran-inexecutable"
    PREEMPTED_NONPREEMPTIVE = "preempted-nonpreemptive"
    STARTED_NOT_COMPLETED = "started-not-completed"
    LEFT_WHILE_EXECUTABLE = "left-while-executable"
    OVERLAP = "overlap"
    OUTSIDE_WINDOW = "outside-window"


@dataclass(frozen=True)
class Violation:
    kind: ViolationKind
    time: int
    job_id: int | None = None

    def __str__(self) -> str:
        who = f" job {self.job_id}" if self.job_id is not None else ""
        return f"{self.kind.value} at {self.time}{who}"


@dataclass
class ExecState:
    """Snapshot of execution progress at time ``now``.

    ``done`` maps job id to executed units; ``started`` is derived from it.
    ``active_job`` is the mid-run job in the nonpreemptive regime and must be
    None elsewhere.
    """

    now: int
    done: dict[int, int] = field(default_factory=dict)
    active_job: int | None = None

    @property
    def started(self) -> set[int]:
        return {job_id for job_id, y in self.done.items() if y > 0}

    def amount(self, job_id: int) -> int:
        return self.done.get(job_id, 0)


def executable_set(instance: Instance, state: ExecState) -> set[int]:
    """Job ids the worker may (hence must, if nonempty) work on at ``now``."""
    regime = instance.regime
    if regime is Regime.NONPREEMPTIVE and state.active_job is not None:
        return {state.active_job}
    out: set[int] = set()
    for job in instance.jobs:
        if job.degenerate:
            continue
        done = state.amount(job.id)
        if done >= job.length or job.arrival > state.now:
            continue
        if regime is Regime.NONPREEMPTIVE:
            if done == 0 and state.now <= critical_time(job):
                out.add(job.id)
        elif regime is Regime.PREEMPT_I:
            if state.now + 1 <= job.deadline:
                out.add(job.id)
        else:  # PREEMPT_II and PREEMPT_III both require completability.
            if state.now <= adjusted_critical_time(job, done):
                out.add(job.id)
    return out


def executable_at_or_after(instance: Instance, job: Job, done: int, time: int) -> bool:
    """Whether ``job`` is executable at some moment >= ``time`` given ``done``.

    Used for go-home legality.  A partially executed job whose window closed
    is treated as never executable again (its deadline passed), including
    under preempt-I.
    """
    if job.degenerate or done >= job.length:
        return False
    earliest = max(job.arrival, time)
    if instance.regime is Regime.NONPREEMPTIVE:
        return done == 0 and earliest <= critical_time(job)
    if instance.regime is Regime.PREEMPT_I:
        return earliest + 1 <= job.deadline
    return earliest <= adjusted_critical_time(job, done)


def forced_gaps(instance: Instance) -> tuple[list[tuple[int, int]], int]:
    """Intervals where no schedule can work, plus the end of the last one.

    A forced gap opens when the total work arrived so far is exhausted before
    the next arrival; subsequent gaps re-zero at each gap end.  Gaps are
    maximal and always of positive length on the grid (the partial-sum
    comparison is strict).  Returns ``(gaps, tau_prime)`` with ``tau_prime``
    0 when there are no gaps.
    """
    gaps: list[tuple[int, int]] = []
    busy_until = 0
    for job in sorted(instance.active_jobs(), key=lambda j: (j.arrival, j.id)):
        if busy_until < job.arrival:
            gaps.append((busy_until, job.arrival))
            busy_until = job.arrival
        busy_until += job.length
    tau_prime = gaps[-1][1] if gaps else 0
    return gaps, tau_prime


def _structural_violations(instance: Instance, schedule: Schedule) -> list[Violation]:
    out: list[Violation] = []
    prev_end = None
    for seg in schedule.segments:
        if prev_end is not None and seg.start < prev_end:
            out.append(Violation(ViolationKind.OVERLAP, seg.start, seg.job_id))
        prev_end = max(prev_end, seg.end) if prev_end is not None else seg.end
        job = instance.job(seg.job_id)
        if seg.start < job.arrival or seg.end > job.deadline:
            out.append(Violation(ViolationKind.OUTSIDE_WINDOW, seg.start, seg.job_id))
        if seg.end > schedule.leave_time:
            # Work after going home is nonsensical; flag it at the leave time.
            out.append(
                Violation(ViolationKind.RAN_INEXECUTABLE, schedule.leave_time, seg.job_id)
            )
    return out


def validate(instance: Instance, schedule: Schedule) -> list[Violation]:
    """Replay ``schedule`` slot by slot and report every broken rule.

    An empty list means the schedule is feasible: all work is executable when
    run, the worker never idles while anything is executable, nonpreemptive
    jobs run contiguously to completion, preempt-III finishes what it starts,
    and at ``leave_time`` nothing is or ever becomes executable.
    """
    for seg in schedule.segments:
        instance.job(seg.job_id)  # raises on unknown id
    violations = _structural_violations(instance, schedule)

    slot_job: dict[int, int] = {}
    for seg in schedule.segments:
        for t in range(seg.start, min(seg.end, schedule.leave_time)):
            slot_job[t] = seg.job_id

    arrivals = sorted({job.arrival for job in instance.active_jobs()})
    state = ExecState(now=0)
    now = 0
    prev_job: int | None = None
    while now < schedule.leave_time:
        state.now = now
        worked = slot_job.get(now)
        if instance.regime is Regime.NONPREEMPTIVE:
            if prev_job is not None and 0 < state.amount(prev_job) < instance.job(prev_job).length:
                state.active_job = prev_job
            else:
                state.active_job = None
        executable = executable_set(instance, state)
        if worked is None:
            if executable:
                violations.append(
                    Violation(ViolationKind.IDLE_WHILE_EXECUTABLE, now, min(executable))
                )
                now += 1
            else:
                # Nothing to report in an empty stretch; skip to the next event.
                candidates = [t for t in arrivals if t > now]
                candidates += [t for t in slot_job if t > now]
                now = min(candidates, default=schedule.leave_time)
            prev_job = None if worked is None else worked
            continue
        if worked not in executable:
            violations.append(Violation(ViolationKind.RAN_INEXECUTABLE, now, worked))
        state.done[worked] = state.amount(worked) + 1
        prev_job = worked
        now += 1

    if instance.regime is Regime.NONPREEMPTIVE:
        runs: dict[int, list[tuple[int, int]]] = {}
        for seg in schedule.segments:
            runs.setdefault(seg.job_id, []).append((seg.start, seg.end))
        for job_id, pieces in runs.items():
            pieces.sort()
            contiguous = all(
                pieces[i][1] == pieces[i + 1][0] for i in range(len(pieces) - 1)
            )
            total = sum(end - start for start, end in pieces)
            if not contiguous or total != instance.job(job_id).length:
                violations.append(
                    Violation(
                        ViolationKind.PREEMPTED_NONPREEMPTIVE, pieces[0][0], job_id
                    )
                )

    final = ExecState(now=schedule.leave_time, done=dict(state.done))
    if instance.regime is Regime.PREEMPT_III:
        for job in instance.jobs:
            done = final.amount(job.id)
            if 0 < done < job.length:
                violations.append(
                    Violation(
                        ViolationKind.STARTED_NOT_COMPLETED, schedule.leave_time, job.id
                    )
                )
    for job in instance.jobs:
        if executable_at_or_after(
            instance, job, final.amount(job.id), schedule.leave_time
        ):
            violations.append(
                Violation(
                    ViolationKind.LEFT_WHILE_EXECUTABLE, schedule.leave_time, job.id
                )
            )
    return violations
