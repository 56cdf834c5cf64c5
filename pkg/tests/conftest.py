"""Shared helpers: monoid-aware equality, random aggregates, op streams."""

import random

import pytest

from swag import (
    Daba,
    DabaLite,
    RecalcOracle,
    TwoStacks,
    TwoStacksLite,
    aggregates_equal,
    make_monoid,
)

ENGINE_CLASSES = {
    "two-stacks": TwoStacks,
    "two-stacks-lite": TwoStacksLite,
    "daba": Daba,
    "daba-lite": DabaLite,
}

ALL_MONOIDS = ("sum", "maxcount", "geomean", "bloom", "concat")


def agg_eq(monoid_name):
    """Equality predicate for one monoid's aggregates."""
    return lambda a, b: aggregates_equal(monoid_name, a, b)


def random_agg(monoid_name, rng):
    """A random in-carrier aggregate, occasionally the identity."""
    m = make_monoid(monoid_name)
    if rng.random() < 0.05:
        return m.identity
    if monoid_name == "sum":
        return rng.randint(-1000, 1000)
    if monoid_name == "maxcount":
        return (rng.randint(-50, 50), rng.randint(1, 5))
    if monoid_name == "geomean":
        # Fold a handful of lifted positive values so the carrier invariant
        # (count 0 implies log sum 0) holds by construction.
        agg = m.lift(rng.uniform(1.0, 100.0))
        for _ in range(rng.randint(0, 4)):
            agg = m.combine(agg, m.lift(rng.uniform(1.0, 100.0)))
        return agg
    if monoid_name == "bloom":
        return (rng.getrandbits(8192), 8192, 3)
    if monoid_name == "concat":
        agg = m.lift("".join(rng.choice("abcdefgh") for _ in range(rng.randint(1, 6))))
        for _ in range(rng.randint(0, 3)):
            agg = m.combine(agg, m.lift(rng.choice("abcdefgh")))
        return agg
    raise ValueError(monoid_name)


def random_op_kinds(seed, count, p_insert=0.45, p_evict=0.45):
    """Deterministic mixed op stream; evicts are guarded by window size."""
    rng = random.Random(seed)
    size = 0
    ops = []
    for _ in range(count):
        r = rng.random()
        if r < p_insert or size == 0:
            ops.append(("insert", rng.randint(1, 100)))
            size += 1
        elif r < p_insert + p_evict:
            ops.append(("evict", None))
            size -= 1
        else:
            ops.append(("query", None))
    return ops


def replay(engine, monoid, op_kinds, collect=None):
    """Drive an engine through raw-value op kinds, lifting at ingestion."""
    lift = monoid.lift
    for kind, raw in op_kinds:
        if kind == "insert":
            engine.insert(lift(raw))
        elif kind == "evict":
            engine.evict()
        else:
            out = engine.query()
            if collect is not None:
                collect.append(out)


@pytest.fixture(params=sorted(ENGINE_CLASSES))
def engine_name(request):
    return request.param
