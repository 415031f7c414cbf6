from __future__ import annotations

import pytest

from lazybureaucrat import Instance, Job, Regime


def mk_instance(spec, regime, scale=1):
    """Build an instance from (arrival, deadline, length[, weight]) tuples."""
    jobs = []
    for i, row in enumerate(spec):
        if len(row) == 3:
            a, d, t = row
            jobs.append(Job(id=i, arrival=a, deadline=d, length=t))
        else:
            a, d, t, w = row
            jobs.append(Job(id=i, arrival=a, deadline=d, length=t, weight=w))
    return Instance(jobs=tuple(jobs), regime=regime, scale=scale)


@pytest.fixture
def go_home_example():
    """Three jobs, common deadline 10: lengths 2 and 9 at time 0, length 2 at
    time 8.  Minimal work is 4 (both short jobs); earliest leave is 9 (the
    long job alone)."""
    return mk_instance([(0, 10, 2), (0, 10, 9), (8, 10, 2)], Regime.PREEMPT_II)


@pytest.fixture
def limiting_n4():
    from lazybureaucrat import gen_limiting_example

    return gen_limiting_example(4)
