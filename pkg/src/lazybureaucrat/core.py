"""Core domain model: jobs, instances, schedules, objectives, and text formats.

All times live on a common integer grid; one unit of work occupies the
half-open slot ``[tau, tau + 1)``.  Rational quantities (the epsilon devices
used by some constructions) are expressed by choosing a finer grid through the
instance ``scale`` field, never by floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable


class LbpError(Exception):
    """Base class for errors raised by this package."""


class ParseError(LbpError):
    """A malformed instance or schedule file.

    Carries the 1-based line number of the offending line.
    """

    def __init__(self, line_no: int, message: str) -> None:
        self.line_no = line_no
        super().__init__(f"line {line_no}: {message}")


class PreconditionError(LbpError):
    """An operation was invoked on an instance outside its applicability."""


class Regime(Enum):
    """Execution regime: which jobs the worker may run at a given moment.

    NONPREEMPTIVE  a job begun runs to completion without interruption.
    PREEMPT_I      any arrived, unfinished job inside its window.
    PREEMPT_II     arrived and still completable by its deadline.
    PREEMPT_III    inside its window, but whatever is started must
                   eventually be completed.
    """

    NONPREEMPTIVE = "nonpreemptive"
    PREEMPT_I = "preempt1"
    PREEMPT_II = "preempt2"
    PREEMPT_III = "preempt3"

    @classmethod
    def from_token(cls, token: str) -> "Regime":
        for regime in cls:
            if regime.value == token:
                return regime
        raise ValueError(f"unknown regime token {token!r}")


class ObjectiveKind(Enum):
    """What the worker minimizes."""

    TOTAL_WORK = "total-work"
    WEIGHTED_COMPLETED = "weighted-completed"
    MAKESPAN = "makespan"

    @classmethod
    def from_token(cls, token: str) -> "ObjectiveKind":
        for kind in cls:
            if kind.value == token:
                return kind
        raise ValueError(f"unknown objective token {token!r}")


@dataclass(frozen=True)
class Job:
    """One task: window ``[arrival, deadline]``, duration ``length``.

    ``weight`` defaults to ``length`` (the usual fee model); unit or other
    integer weights may be supplied.  A job whose window cannot hold it
    (``deadline < arrival + length``) is kept but flagged degenerate and is
    never executable.
    """

    id: int
    arrival: int
    deadline: int
    length: int
    weight: int | None = None

    def __post_init__(self) -> None:
        for name in ("id", "arrival", "deadline", "length"):
            if not isinstance(getattr(self, name), int):
                raise ValueError(f"job field {name} must be an integer")
        if self.weight is None:
            object.__setattr__(self, "weight", self.length)
        elif not isinstance(self.weight, int):
            raise ValueError("job field weight must be an integer")
        if self.arrival < 0:
            raise ValueError(f"job {self.id}: arrival must be nonnegative")
        if self.length < 1:
            raise ValueError(f"job {self.id}: length must be at least 1")
        if self.weight < 0:
            raise ValueError(f"job {self.id}: weight must be nonnegative")

    @property
    def degenerate(self) -> bool:
        """True when the window cannot hold the job; such a job never runs."""
        return self.deadline < self.arrival + self.length


def critical_time(job: Job) -> int:
    """Latest start time at which ``job`` can still be completed."""
    return job.deadline - job.length


def adjusted_critical_time(job: Job, done: int) -> int:
    """Latest resume time given ``done`` units already executed.

    Strictly increasing in ``done``; equals the deadline once the job is
    complete.
    """
    if not 0 <= done <= job.length:
        raise ValueError(
            f"done={done} outside [0, {job.length}] for job {job.id}"
        )
    return job.deadline - job.length + done


@dataclass(frozen=True)
class Instance:
    """A job set plus execution regime on a common integer grid.

    ``scale`` records how many grid units make one original time unit, so
    epsilon constructions stay integral.  Job ids must be 0..n-1 in input
    order.
    """

    jobs: tuple[Job, ...]
    regime: Regime
    scale: int = 1

    def __post_init__(self) -> None:
        object.__setattr__(self, "jobs", tuple(self.jobs))
        if not isinstance(self.scale, int) or self.scale < 1:
            raise ValueError("scale must be a positive integer")
        for position, job in enumerate(self.jobs):
            if job.id != position:
                raise ValueError(
                    f"job ids must be 0..n-1 in input order; "
                    f"position {position} holds id {job.id}"
                )

    @property
    def horizon(self) -> int:
        """K, the largest deadline (0 for an empty instance)."""
        return max((job.deadline for job in self.jobs), default=0)

    def job(self, job_id: int) -> Job:
        if not 0 <= job_id < len(self.jobs):
            raise ValueError(f"unknown job id {job_id}")
        return self.jobs[job_id]

    def active_jobs(self) -> tuple[Job, ...]:
        """Jobs that can run at all (non-degenerate)."""
        return tuple(job for job in self.jobs if not job.degenerate)

    def common_deadline(self) -> int | None:
        deadlines = {job.deadline for job in self.active_jobs()}
        if len(deadlines) == 1:
            return deadlines.pop()
        return None

    def common_arrival(self) -> int | None:
        arrivals = {job.arrival for job in self.active_jobs()}
        if len(arrivals) == 1:
            return arrivals.pop()
        return None


def rescale(instance: Instance, factor: int) -> Instance:
    """Refine the grid by ``factor``: all time fields multiply, weights stay."""
    if not isinstance(factor, int) or factor < 1:
        raise ValueError("factor must be a positive integer")
    jobs = tuple(
        Job(
            id=job.id,
            arrival=job.arrival * factor,
            deadline=job.deadline * factor,
            length=job.length * factor,
            weight=job.weight,
        )
        for job in instance.jobs
    )
    return Instance(jobs=jobs, regime=instance.regime, scale=instance.scale * factor)


@dataclass(frozen=True)
class Segment:
    """Half-open work interval ``[start, end)`` assigned to one job."""

    job_id: int
    start: int
    end: int

    def __post_init__(self) -> None:
        for name in ("job_id", "start", "end"):
            if not isinstance(getattr(self, name), int):
                raise ValueError(f"segment field {name} must be an integer")
        if self.start >= self.end:
            raise ValueError(f"segment [{self.start}, {self.end}) is empty")

    @property
    def length(self) -> int:
        return self.end - self.start


@dataclass(frozen=True)
class Schedule:
    """Time-sorted work segments plus the moment the worker goes home.

    The type admits infeasible schedules on purpose: the validator's job is
    to report what is wrong with them.
    """

    segments: tuple[Segment, ...]
    leave_time: int

    def __post_init__(self) -> None:
        object.__setattr__(
            self,
            "segments",
            tuple(sorted(self.segments, key=lambda s: (s.start, s.end, s.job_id))),
        )
        if not isinstance(self.leave_time, int) or self.leave_time < 0:
            raise ValueError("leave_time must be a nonnegative integer")

    def work_by_job(self) -> dict[int, int]:
        totals: dict[int, int] = {}
        for seg in self.segments:
            totals[seg.job_id] = totals.get(seg.job_id, 0) + seg.length
        return totals

    @property
    def total_work(self) -> int:
        return sum(seg.length for seg in self.segments)

    @property
    def last_end(self) -> int:
        return max((seg.end for seg in self.segments), default=0)


def merge_slots(slots: Iterable[tuple[int, int]]) -> tuple[Segment, ...]:
    """Turn (time, job_id) unit slots into maximal segments."""
    segments: list[Segment] = []
    for time, job_id in sorted(slots):
        if segments and segments[-1].job_id == job_id and segments[-1].end == time:
            segments[-1] = Segment(job_id, segments[-1].start, time + 1)
        else:
            segments.append(Segment(job_id, time, time + 1))
    return tuple(segments)


def evaluate(instance: Instance, schedule: Schedule, objective: ObjectiveKind) -> int:
    """Objective value of ``schedule`` on ``instance``.

    TOTAL_WORK sums segment lengths, WEIGHTED_COMPLETED sums weights of fully
    executed jobs, MAKESPAN is the go-home time.
    """
    for seg in schedule.segments:
        if not 0 <= seg.job_id < len(instance.jobs):
            raise ValueError(f"segment refers to unknown job id {seg.job_id}")
    if objective is ObjectiveKind.TOTAL_WORK:
        return schedule.total_work
    if objective is ObjectiveKind.MAKESPAN:
        return schedule.leave_time
    done = schedule.work_by_job()
    return sum(
        job.weight
        for job in instance.jobs
        if done.get(job.id, 0) == job.length
    )


_MAGIC = "lbp v1"


def _content_lines(text: str) -> list[tuple[int, str]]:
    out = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append((line_no, line))
    return out


def _parse_int(line_no: int, token: str, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(line_no, f"{what} is not an integer: {token!r}") from None


def parse_instance(text: str) -> Instance:
    """Parse the ``lbp v1`` instance format; see ``serialize_instance``."""
    lines = _content_lines(text)
    if not lines or lines[0][1] != _MAGIC:
        line_no = lines[0][0] if lines else 1
        raise ParseError(line_no, f"expected header {_MAGIC!r}")
    if len(lines) < 3:
        raise ParseError(lines[-1][0], "missing regime/scale header lines")

    line_no, regime_line = lines[1]
    if not regime_line.startswith("regime:"):
        raise ParseError(line_no, "expected 'regime: <token>'")
    try:
        regime = Regime.from_token(regime_line.split(":", 1)[1].strip())
    except ValueError as exc:
        raise ParseError(line_no, str(exc)) from None

    line_no, scale_line = lines[2]
    if not scale_line.startswith("scale:"):
        raise ParseError(line_no, "expected 'scale: <int>'")
    scale = _parse_int(line_no, scale_line.split(":", 1)[1].strip(), "scale")
    if scale < 1:
        raise ParseError(line_no, "scale must be positive")

    jobs: list[Job] = []
    seen_ids: set[int] = set()
    for line_no, line in lines[3:]:
        parts = line.split()
        if parts[0] != "job" or len(parts) < 2:
            raise ParseError(line_no, f"expected 'job <id> key=value ...': {line!r}")
        job_id = _parse_int(line_no, parts[1], "job id")
        if job_id in seen_ids:
            raise ParseError(line_no, f"duplicate job id {job_id}")
        seen_ids.add(job_id)
        fields: dict[str, int] = {}
        for part in parts[2:]:
            if "=" not in part:
                raise ParseError(line_no, f"expected key=value, got {part!r}")
            key, value = part.split("=", 1)
            if key not in ("arrival", "deadline", "length", "weight"):
                raise ParseError(line_no, f"unknown job field {key!r}")
            if key in fields:
                raise ParseError(line_no, f"repeated job field {key!r}")
            fields[key] = _parse_int(line_no, value, key)
        for required in ("arrival", "deadline", "length"):
            if required not in fields:
                raise ParseError(line_no, f"job {job_id} missing field {required!r}")
        try:
            jobs.append(
                Job(
                    id=job_id,
                    arrival=fields["arrival"],
                    deadline=fields["deadline"],
                    length=fields["length"],
                    weight=fields.get("weight"),
                )
            )
        except ValueError as exc:
            raise ParseError(line_no, str(exc)) from None
    jobs.sort(key=lambda job: job.id)
    try:
        return Instance(jobs=tuple(jobs), regime=regime, scale=scale)
    except ValueError as exc:
        raise ParseError(lines[-1][0] if lines else 1, str(exc)) from None


def serialize_instance(instance: Instance) -> str:
    """Inverse of ``parse_instance``; round-trips exactly."""
    out = [_MAGIC, f"regime: {instance.regime.value}", f"scale: {instance.scale}"]
    for job in instance.jobs:
        line = (
            f"job {job.id} arrival={job.arrival} "
            f"deadline={job.deadline} length={job.length}"
        )
        if job.weight != job.length:
            line += f" weight={job.weight}"
        out.append(line)
    return "\n".join(out) + "\n"


def parse_schedule(text: str) -> Schedule:
    """Parse the schedule format: a leave line then ``seg <job> <start> <end>``."""
    lines = _content_lines(text)
    if not lines or not lines[0][1].startswith("leave:"):
        raise ParseError(lines[0][0] if lines else 1, "expected 'leave: <int>'")
    line_no, leave_line = lines[0]
    leave = _parse_int(line_no, leave_line.split(":", 1)[1].strip(), "leave time")
    segments: list[Segment] = []
    for line_no, line in lines[1:]:
        parts = line.split()
        if parts[0] != "seg" or len(parts) != 4:
            raise ParseError(line_no, f"expected 'seg <job> <start> <end>': {line!r}")
        job_id = _parse_int(line_no, parts[1], "job id")
        start = _parse_int(line_no, parts[2], "segment start")
        end = _parse_int(line_no, parts[3], "segment end")
        try:
            segments.append(Segment(job_id=job_id, start=start, end=end))
        except ValueError as exc:
            raise ParseError(line_no, str(exc)) from None
    try:
        return Schedule(segments=tuple(segments), leave_time=leave)
    except ValueError as exc:
        raise ParseError(lines[0][0], str(exc)) from None


def serialize_schedule(schedule: Schedule) -> str:
    out = [f"leave: {schedule.leave_time}"]
    for seg in schedule.segments:
        out.append(f"seg {seg.job_id} {seg.start} {seg.end}")
    return "\n".join(out) + "\n"
