"""Monoid laws and the concrete catalog."""

import math
import random

import pytest

from swag import bloom_might_contain, make_bloom_monoid, make_monoid
from swag.monoids import CONCAT_KEEP, _bloom_indices

from conftest import ALL_MONOIDS, agg_eq, random_agg

TRIPLES = 10_000


# --- maxcount -------------------------------------------------------------

def test_maxcount_combine_picks_larger():
    m = make_monoid("maxcount")
    assert m.combine((4, 3), (6, 2)) == (6, 2)
    assert m.combine((6, 2), (4, 3)) == (6, 2)


def test_maxcount_combine_adds_counts_on_tie():
    m = make_monoid("maxcount")
    assert m.combine((5, 1), (5, 2)) == (5, 3)


def test_maxcount_lift_and_lower():
    m = make_monoid("maxcount")
    assert m.lift(4) == (4, 1)
    assert m.lower((4, 3)) == 3


def test_maxcount_fold_matches_direct_scan():
    m = make_monoid("maxcount")
    rng = random.Random(11)
    for _ in range(200):
        values = [rng.randint(0, 20) for _ in range(rng.randint(1, 50))]
        agg = m.identity
        for v in values:
            agg = m.combine(agg, m.lift(v))
        top = max(values)
        assert agg == (top, values.count(top))


# --- geomean ----------------------------------------------------------------

def test_geomean_lift_of_one_is_zero_log():
    m = make_monoid("geomean")
    assert m.lift(1) == (0.0, 1)
    assert m.lower(m.lift(1)) == 1.0


def test_geomean_of_two_and_eight_is_four():
    m = make_monoid("geomean")
    agg = m.combine(m.lift(2), m.lift(8))
    expected = math.exp((math.log(2) + math.log(8)) / 2)  # = 4
    assert math.isclose(m.lower(agg), expected, rel_tol=1e-12)
    assert math.isclose(m.lower(agg), 4.0, rel_tol=1e-12)


def test_geomean_empty_window_lowers_to_one():
    m = make_monoid("geomean")
    assert m.lower(m.identity) == 1.0


def test_geomean_rejects_nonpositive_inputs():
    m = make_monoid("geomean")
    with pytest.raises(ValueError):
        m.lift(0)
    with pytest.raises(ValueError):
        m.lift(-3)


# --- concat ---------------------------------------------------------------

def test_concat_examples():
    m = make_monoid("concat")
    assert m.lower(m.combine(m.lift("bc"), m.lift("d"))) == "bcd"
    assert m.lower(m.identity) == ""


def test_concat_is_not_commutative():
    m = make_monoid("concat")
    a, b = m.lift("a"), m.lift("b")
    assert m.combine(a, b) != m.combine(b, a)


def test_concat_truncation_tracks_length_and_ends():
    m = make_monoid("concat")
    agg = m.identity
    for ch in "abcdefghijklmnopqrstuvwxyz":
        agg = m.combine(agg, m.lift(ch))
    assert agg[2] == 26
    assert agg[0] == "abcdefghijklmnop"[:CONCAT_KEEP]
    assert agg[1] == "klmnopqrstuvwxyz"[-CONCAT_KEEP:]
    assert m.lower(agg) == f"{agg[0]}..{agg[1]}"


# --- bloom ----------------------------------------------------------------

def test_bloom_lift_sets_at_most_k_bits():
    m = make_monoid("bloom")
    rng = random.Random(5)
    for _ in range(200):
        x = rng.randint(0, 10**9)
        bits, width, k = m.lift(x)
        assert bits.bit_count() <= k
        # Recompute the probe positions independently of lift.
        expected = 0
        for idx in _bloom_indices(x, width, k):
            expected |= 1 << idx
        assert bits == expected


def test_bloom_combine_is_bitwise_or():
    m = make_monoid("bloom")
    a, b = m.lift("x"), m.lift("y")
    assert m.combine(a, b)[0] == a[0] | b[0]


def test_bloom_popcount_monotone_under_combine():
    m = make_monoid("bloom")
    rng = random.Random(6)
    for _ in range(200):
        a = random_agg("bloom", rng)
        b = random_agg("bloom", rng)
        c = m.combine(a, b)
        assert c[0].bit_count() >= max(a[0].bit_count(), b[0].bit_count())


def test_bloom_membership_has_no_false_negatives():
    m = make_monoid("bloom")
    items = [f"item-{i}" for i in range(50)]
    agg = m.identity
    for x in items:
        agg = m.combine(agg, m.lift(x))
    assert all(bloom_might_contain(agg, x) for x in items)


def test_bloom_configuration_mismatch_raises():
    big = make_bloom_monoid(8192, 3)
    small = make_bloom_monoid(1024, 3)
    with pytest.raises(ValueError, match="mismatch"):
        big.combine(big.lift("x"), small.lift("x"))


def test_bloom_rejects_degenerate_configuration():
    with pytest.raises(ValueError):
        make_bloom_monoid(0, 3)


# --- algebraic laws ---------------------------------------------------------

def _law_eq(name):
    if name == "geomean":
        return lambda a, b: a[1] == b[1] and math.isclose(
            a[0], b[0], rel_tol=1e-12, abs_tol=1e-12
        )
    return lambda a, b: a == b


@pytest.mark.parametrize("name", ALL_MONOIDS)
def test_combine_is_associative(name):
    m = make_monoid(name)
    eq = _law_eq(name)
    rng = random.Random(f"assoc-{name}")
    for _ in range(TRIPLES):
        a = random_agg(name, rng)
        b = random_agg(name, rng)
        c = random_agg(name, rng)
        assert eq(m.combine(a, m.combine(b, c)), m.combine(m.combine(a, b), c))


@pytest.mark.parametrize("name", ALL_MONOIDS)
def test_identity_is_two_sided(name):
    m = make_monoid(name)
    eq = agg_eq(name)
    rng = random.Random(f"identity-{name}")
    for _ in range(TRIPLES):
        a = random_agg(name, rng)
        assert eq(m.combine(m.identity, a), a)
        assert eq(m.combine(a, m.identity), a)


def test_unknown_monoid_name_raises():
    with pytest.raises(ValueError):
        make_monoid("median")
