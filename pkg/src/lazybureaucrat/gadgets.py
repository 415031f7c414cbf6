"""Hardness-reduction instance generators and seeded random corpora.

Each generator builds the scheduling instance that encodes a source
combinatorial problem, together with a certificate or canonical-schedule
builder tying solver output back to that problem.  The generators only emit
instances; no reduction proofs are replayed here.
"""

from __future__ import annotations

import random
from typing import Callable

from .core import Instance, Job, Regime, Schedule, Segment
from .oracle import subset_sum_reachable

PROFILES = (
    "general",
    "narrow-window",
    "common-arrival",
    "common-deadline",
    "unit-length",
)


def gen_subset_sum_nonpreemptive(
    values: list[int], target: int
) -> tuple[Instance, bool]:
    """Nonpreemptive instance in which one oversized job is avoidable exactly
    when some subset of ``values`` sums to ``target``.

    Every value becomes a job with window [0, target]; the long job has
    length 1 + sum(values) and just enough slack that its last start is at
    target - 1.  The returned certificate is the independent subset-sum
    answer.
    """
    if any(v <= 0 for v in values):
        raise ValueError("values must be positive")
    if target > sum(values):
        raise ValueError("target must not exceed the sum of the values")
    jobs = [
        Job(id=i, arrival=0, deadline=target, length=v)
        for i, v in enumerate(values)
    ]
    long_length = 1 + sum(values)
    jobs.append(
        Job(
            id=len(values),
            arrival=0,
            deadline=target + long_length - 1,
            length=long_length,
        )
    )
    instance = Instance(jobs=tuple(jobs), regime=Regime.NONPREEMPTIVE)
    return instance, subset_sum_reachable(values, target)


def gen_3partition(
    values: list[int], bound: int
) -> tuple[Instance, Callable[[list[list[int]]], Schedule]]:
    """Instance encoding 3-partition, plus a canonical-schedule builder.

    Element jobs share window [0, (m-1) + m*bound]; m-1 unit jobs with
    zero-slack windows split that span into stretches of length exactly
    ``bound``; one large job (length m*bound + m) is avoidable only when all
    element and unit jobs run.  Given a witness partition (m triples of
    values), the builder lays the triples into the stretches and returns the
    canonical schedule for validation.
    """
    if len(values) % 3 != 0 or not values:
        raise ValueError("need 3m values")
    m = len(values) // 3
    if sum(values) != m * bound:
        raise ValueError("values must sum to m * bound")
    for v in values:
        if not bound / 4 < v < bound / 2:
            raise ValueError(f"value {v} outside (bound/4, bound/2)")
    element_deadline = (m - 1) + m * bound
    jobs = [
        Job(id=i, arrival=0, deadline=element_deadline, length=v)
        for i, v in enumerate(values)
    ]
    for i in range(1, m):
        jobs.append(
            Job(
                id=len(jobs),
                arrival=i * (bound + 1) - 1,
                deadline=i * (bound + 1),
                length=1,
            )
        )
    large_length = m * bound + m
    jobs.append(
        Job(
            id=len(jobs),
            arrival=0,
            deadline=large_length + (m - 2) + m * bound,
            length=large_length,
        )
    )
    instance = Instance(jobs=tuple(jobs), regime=Regime.NONPREEMPTIVE)

    value_slots: dict[int, list[int]] = {}
    for i, v in enumerate(values):
        value_slots.setdefault(v, []).append(i)

    def canonical(partition: list[list[int]]) -> Schedule:
        """Schedule a witness partition: triple i fills stretch i, unit jobs
        run in their unit windows, the large job never runs."""
        if len(partition) != m or any(sum(triple) != bound for triple in partition):
            raise ValueError("not a valid partition into triples summing to bound")
        pool = {v: ids[:] for v, ids in value_slots.items()}
        segments = []
        for stretch, triple in enumerate(partition):
            cursor = stretch * (bound + 1)
            for v in triple:
                if not pool.get(v):
                    raise ValueError(f"value {v} not available in the instance")
                job_id = pool[v].pop()
                segments.append(Segment(job_id, cursor, cursor + v))
                cursor += v
        for i in range(1, m):
            unit_id = 3 * m + i - 1
            segments.append(Segment(unit_id, i * (bound + 1) - 1, i * (bound + 1)))
        return Schedule(segments=tuple(segments), leave_time=element_deadline)

    return instance, canonical


def gen_bounded_delta(values: list[int], bound: int, delta: int, m: int) -> Instance:
    """Bounded length-ratio variant: the single large job becomes two chains
    of zero-slack jobs.

    The unit separators grow to length bound/3; after the element jobs'
    deadline a chain of long jobs (length delta*bound/4) fills back-to-back
    windows, while a chain of short jobs (length bound/4) overlaps each long
    job's last unit, so skipping every long job stays possible exactly when
    the partition work fits.  Requires bound divisible by 12 so all lengths
    stay integral.
    """
    if bound % 12 != 0:
        raise ValueError("bound must be divisible by 12")
    if delta < 2 or not isinstance(delta, int):
        raise ValueError("delta must be an integer at least 2")
    if len(values) != 3 * m or m < 1:
        raise ValueError("need exactly 3m values")
    if sum(values) != m * bound:
        raise ValueError("values must sum to m * bound")
    for v in values:
        if not bound / 4 < v < bound / 2:
            raise ValueError(f"value {v} outside (bound/4, bound/2)")
    third = bound // 3
    quarter = bound // 4
    spacing = bound + third
    element_deadline = (m - 1) * third + m * bound
    jobs = [
        Job(id=i, arrival=0, deadline=element_deadline, length=v)
        for i, v in enumerate(values)
    ]
    for i in range(1, m):
        jobs.append(
            Job(
                id=len(jobs),
                arrival=i * spacing - third,
                deadline=i * spacing,
                length=third,
            )
        )
    long_arrival = element_deadline - 1
    for _ in range(m):
        jobs.append(
            Job(
                id=len(jobs),
                arrival=long_arrival,
                deadline=long_arrival + delta * quarter,
                length=delta * quarter,
            )
        )
        overlap_arrival = long_arrival + delta * quarter - 1
        jobs.append(
            Job(
                id=len(jobs),
                arrival=overlap_arrival,
                deadline=overlap_arrival + quarter,
                length=quarter,
            )
        )
        long_arrival = long_arrival + delta * quarter
    return Instance(jobs=tuple(jobs), regime=Regime.NONPREEMPTIVE)


def gen_preempt2_subset_sum(
    values: list[int], target: int
) -> tuple[Instance, int, bool]:
    """Preempt-II gadget: going home by the scaled target is possible exactly
    when some subset of ``values`` sums to ``target``.

    One grid unit plays epsilon = 1/(3n), so every length and deadline is
    multiplied by 3n.  Job i gets deadline target + value_i - epsilon; the
    long job (length target + 1) gets deadline target - 2*epsilon plus its
    length.  Returns (instance, scaled leave target, certificate).
    """
    if any(v <= 0 for v in values):
        raise ValueError("values must be positive")
    if target <= 0:
        raise ValueError("target must be positive")
    n = len(values)
    q = 3 * n if n else 3
    jobs = [
        Job(
            id=i,
            arrival=0,
            deadline=q * target + q * v - 1,
            length=q * v,
        )
        for i, v in enumerate(values)
    ]
    long_length = q * (target + 1)
    jobs.append(
        Job(
            id=n,
            arrival=0,
            deadline=q * target - 2 + long_length,
            length=long_length,
        )
    )
    instance = Instance(jobs=tuple(jobs), regime=Regime.PREEMPT_II, scale=q)
    return instance, q * target, subset_sum_reachable(values, target)


def gen_limiting_example(n: int) -> Instance:
    """Common arrival and deadline, yet no attained optimum: n - 1 jobs of
    length 51 and one of length 48 share the window [0, 100].  The best
    go-home time only approaches 48 + (n-1)/(n-2) as the grid refines."""
    if n < 3:
        raise ValueError("need at least 3 jobs")
    jobs = [Job(id=i, arrival=0, deadline=100, length=51) for i in range(n - 1)]
    jobs.append(Job(id=n - 1, arrival=0, deadline=100, length=48))
    return Instance(jobs=tuple(jobs), regime=Regime.PREEMPT_II, scale=1)


def gen_random(
    n: int,
    horizon: int,
    regime: Regime,
    profile: str,
    rng_seed: int,
) -> Instance:
    """Seeded random instance satisfying the structural profile.

    Profiles: general, narrow-window (every window under twice the length),
    common-arrival, common-deadline, unit-length.  Deterministic for a given
    seed.
    """
    if profile not in PROFILES:
        raise ValueError(f"unknown profile {profile!r}")
    if n < 0 or horizon < 1:
        raise ValueError("need n >= 0 and a positive horizon")
    if profile != "unit-length" and horizon < 2:
        raise ValueError(f"horizon {horizon} too small for profile {profile!r}")
    rng = random.Random(rng_seed)
    jobs: list[Job] = []
    for i in range(n):
        if profile == "unit-length":
            length = 1
            arrival = rng.randrange(0, horizon)
            deadline = rng.randrange(arrival + 1, horizon + 1)
        elif profile == "narrow-window":
            length = rng.randrange(1, max(2, horizon // 3 + 1))
            arrival = rng.randrange(0, horizon - length + 1)
            deadline = rng.randrange(
                arrival + length, min(horizon, arrival + 2 * length - 1) + 1
            )
        elif profile == "common-arrival":
            length = rng.randrange(1, max(2, horizon // 3 + 1))
            arrival = 0
            deadline = rng.randrange(length, horizon + 1)
        elif profile == "common-deadline":
            length = rng.randrange(1, max(2, horizon // 3 + 1))
            arrival = rng.randrange(0, horizon - length + 1)
            deadline = horizon
        else:
            length = rng.randrange(1, max(2, horizon // 3 + 1))
            arrival = rng.randrange(0, horizon - length + 1)
            deadline = rng.randrange(arrival + length, horizon + 1)
        jobs.append(Job(id=i, arrival=arrival, deadline=deadline, length=length))
    return Instance(jobs=tuple(jobs), regime=regime)
