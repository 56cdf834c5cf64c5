"""Two-stack engines: invariants, exact combine counts, amortized bound."""

import random

import pytest

from swag import CountingMonoid, TwoStacks, TwoStacksLite, make_monoid
from swag.amortized import _top

from conftest import agg_eq, random_op_kinds


def test_insert_into_empty_costs_one_combine_and_stores_value():
    m = CountingMonoid(make_monoid("maxcount"))
    eng = TwoStacks(m)
    assert m.delta(lambda: eng.insert((4, 1))) == 1
    rec = _top(eng._back)
    assert rec.val == (4, 1)
    assert rec.agg == (4, 1)  # identity-combined singleton


def test_back_tops_carry_running_aggregates():
    m = make_monoid("maxcount")
    eng = TwoStacks(m)
    eng.insert(m.lift(4))
    assert _top(eng._back).agg == (4, 1)
    eng.insert(m.lift(5))
    assert _top(eng._back).agg == (5, 1)
    eng.insert(m.lift(5))
    assert _top(eng._back).agg == (5, 2)


def test_query_on_empty_is_identity():
    for cls in (TwoStacks, TwoStacksLite):
        m = make_monoid("maxcount")
        assert cls(m).query() == m.identity


def test_evict_on_empty_raises():
    for cls in (TwoStacks, TwoStacksLite):
        with pytest.raises(IndexError):
            cls(make_monoid("sum")).evict()


def test_flip_cost_equals_back_stack_size():
    m = CountingMonoid(make_monoid("sum"))
    eng = TwoStacks(m)
    for i in range(7):
        eng.insert(m.lift(i))
    assert eng.back_size() == 7
    assert m.delta(eng.evict) == 7  # one combine per record moved
    assert m.delta(eng.evict) == 0  # front stack nonempty now


def test_lite_flip_cost_is_window_size_minus_one():
    m = CountingMonoid(make_monoid("sum"))
    eng = TwoStacksLite(m)
    for i in range(7):
        eng.insert(m.lift(i))
    # The in-place rewrite touches every slot but the last.
    assert m.delta(eng.evict) == 6
    assert m.delta(eng.evict) == 0


def test_lite_flip_rewrites_slots_to_suffix_products():
    m = make_monoid("concat")
    eng = TwoStacksLite(m, chunk_capacity=4)
    window = [m.lift(ch) for ch in "cdefgh"]
    for v in window:
        eng.insert(v)
    eng.evict()  # flip, then drop the oldest
    remaining = window[1:]
    slots = list(eng._deque)
    for i in range(len(remaining)):
        suffix = remaining[i]
        for v in remaining[i + 1:]:
            suffix = m.combine(suffix, v)
        assert slots[i] == suffix


@pytest.mark.parametrize("cls", [TwoStacks, TwoStacksLite])
def test_exact_combine_counts_per_operation(cls):
    m = CountingMonoid(make_monoid("sum"))
    eng = cls(m)
    rng = random.Random(f"counts-{cls.__name__}")
    size = 0
    for _ in range(20_000):
        r = rng.random()
        if r < 0.45 or size == 0:
            assert m.delta(lambda: eng.insert(m.lift(1))) == 1
            size += 1
        elif r < 0.9:
            if eng.front_size() > 0:
                allowed = {0}
            elif cls is TwoStacks:
                allowed = {eng.back_size()}
            else:
                allowed = {max(size - 1, 0)}
            assert m.delta(eng.evict) in allowed
            size -= 1
        else:
            assert m.delta(eng.query) == 1


@pytest.mark.parametrize("cls", [TwoStacks, TwoStacksLite])
def test_invariants_hold_after_every_operation(cls):
    m = make_monoid("concat")
    eq = agg_eq("concat")
    eng = cls(m, chunk_capacity=4)
    shadow = []
    rng = random.Random(f"audit-{cls.__name__}")
    for _ in range(2500):
        if rng.random() < 0.55 or not shadow:
            v = m.lift(rng.choice("abcdefgh"))
            eng.insert(v)
            shadow.append(v)
        else:
            eng.evict()
            shadow.pop(0)
        eng.audit(shadow, eq=eq)


@pytest.mark.parametrize("cls", [TwoStacks, TwoStacksLite])
def test_amortized_bound_holds_on_every_prefix(cls):
    m = CountingMonoid(make_monoid("sum"))
    eng = cls(m)
    size = 0
    rng = random.Random("amortized-prefix")
    for t in range(100_000):
        r = rng.random()
        if r < 0.4 or size == 0:
            eng.insert(m.lift(1))
            size += 1
        elif r < 0.75:
            eng.evict()
            size -= 1
        else:
            eng.query()
        assert m.calls <= 3 * (t + 1) + 10


def test_worst_case_evict_scales_with_window():
    maxima = {}
    for exp in (8, 10):
        n = 2**exp
        m = CountingMonoid(make_monoid("sum"))
        eng = TwoStacks(m)
        for i in range(n):
            eng.insert(m.lift(1))
        worst = 0
        for _ in range(n + 16):
            worst = max(worst, m.delta(eng.evict))
            eng.insert(m.lift(1))
        maxima[exp] = worst
    assert maxima[10] == 4 * maxima[8]
    assert maxima[10] == 2**10


@pytest.mark.parametrize("cls,per_element", [(TwoStacks, 2), (TwoStacksLite, 1)])
def test_storage_audit(cls, per_element):
    extra = 0 if cls is TwoStacks else 1
    for n in (0, 1, 7, 256, 300):
        m = make_monoid("sum")
        eng = cls(m)
        for i in range(n):
            eng.insert(m.lift(i))
        assert eng.stored_aggregates() == per_element * n + extra
    # Mixed history lands on the same footprint for the same final size.
    m = make_monoid("sum")
    eng = cls(m)
    for i in range(40):
        eng.insert(m.lift(i))
    for _ in range(25):
        eng.evict()
    assert len(eng) == 15
    assert eng.stored_aggregates() == per_element * 15 + extra
