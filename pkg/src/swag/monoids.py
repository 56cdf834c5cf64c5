"""Aggregation monoids.

Every window engine in this package is generic over a monoid: an associative
binary ``combine`` with a two-sided identity, plus ``lift`` to turn a raw
input element into an aggregate and ``lower`` to turn an aggregate into a
final answer. Operands of ``combine`` are always ordered oldest-first, so
non-commutative monoids work correctly.

Aggregate values are immutable (tuples, ints, strings) and ``combine`` is a
pure function, so monoid values may be shared freely across threads.
"""

import hashlib
import math
from dataclasses import dataclass
from typing import Any, Callable

__all__ = [
    "Monoid",
    "MONOID_NAMES",
    "make_monoid",
    "make_bloom_monoid",
    "bloom_might_contain",
    "aggregates_equal",
    "BLOOM_BITS",
    "BLOOM_HASHES",
    "CONCAT_KEEP",
]


@dataclass(frozen=True)
class Monoid:
    """A combine/identity pair with input and output adapters.

    ``combine(a, b)`` treats ``a`` as older than ``b``. Implementations must
    be associative and must treat ``identity`` as a two-sided unit.
    """

    name: str
    identity: Any
    combine: Callable[[Any, Any], Any]
    lift: Callable[[Any], Any]
    lower: Callable[[Any], Any]


# --------------------------------------------------------------------------
# sum: plain numeric total.

def _sum_combine(a, b):
    return a + b


def _identity_fn(x):
    return x


# --------------------------------------------------------------------------
# maxcount: (value, occurrences) pair tracking the maximum and how often it
# occurs. The identity is (None, 0); a zero count is the only state whose
# value field is None, which stands in for "below every real value".

MAXCOUNT_IDENTITY = (None, 0)


def _maxcount_lift(e):
    return (e, 1)


def _maxcount_combine(a, b):
    if a[1] == 0:
        return b
    if b[1] == 0:
        return a
    if a[0] > b[0]:
        return a
    if a[0] < b[0]:
        return b
    return (a[0], a[1] + b[1])


def _maxcount_lower(v):
    return v[1]


# --------------------------------------------------------------------------
# geomean: (sum of natural logs, count). Log space keeps combine a plain
# addition, so it is associative up to float rounding. Lowering an empty
# aggregate yields 1.0, the empty product.

def _geomean_lift(e):
    if e <= 0:
        raise ValueError(f"geometric mean requires positive inputs, got {e!r}")
    return (math.log(e), 1)


def _geomean_combine(a, b):
    return (a[0] + b[0], a[1] + b[1])


def _geomean_lower(v):
    if v[1] == 0:
        return 1.0
    return math.exp(v[0] / v[1])


# --------------------------------------------------------------------------
# bloom: fixed-width bit vector as an arbitrary-precision int, combined by
# bitwise OR. Every aggregate carries its (bits, hashes) configuration and
# combine refuses mismatched configurations. Hash indices come from double
# hashing one 64-bit blake2b digest, so streams are reproducible across
# processes.

BLOOM_BITS = 8192
BLOOM_HASHES = 3


def _bloom_indices(element, bits, hashes):
    digest = hashlib.blake2b(repr(element).encode(), digest_size=8).digest()
    h = int.from_bytes(digest, "little")
    h1 = h & 0xFFFFFFFF
    h2 = (h >> 32) | 1  # odd step so the probe sequence never collapses
    return [(h1 + i * h2) % bits for i in range(hashes)]


def make_bloom_monoid(bits: int = BLOOM_BITS, hashes: int = BLOOM_HASHES) -> Monoid:
    """Build a bloom-filter monoid for a fixed (bits, hashes) configuration."""
    if bits < 1 or hashes < 1:
        raise ValueError("bloom filter needs at least one bit and one hash")

    def lift(e):
        v = 0
        for idx in _bloom_indices(e, bits, hashes):
            v |= 1 << idx
        return (v, bits, hashes)

    def combine(a, b):
        if a[1] != b[1] or a[2] != b[2]:
            raise ValueError(
                f"bloom configuration mismatch: {a[1:]} vs {b[1:]}"
            )
        return (a[0] | b[0], bits, hashes)

    def lower(v):
        return v[0].bit_count()

    return Monoid("bloom", (0, bits, hashes), combine, lift, lower)


def bloom_might_contain(agg, element) -> bool:
    """True if the filter may contain ``element`` (no false negatives)."""
    bits_value, bits, hashes = agg
    return all(bits_value >> idx & 1 for idx in _bloom_indices(element, bits, hashes))


# --------------------------------------------------------------------------
# concat: ordered concatenation, kept non-commutative on purpose so tests can
# catch operand-order mistakes. Aggregates are (prefix, suffix, length)
# triples truncated to CONCAT_KEEP characters at each end; truncation
# commutes with concatenation, so combine stays exactly associative while
# the cost per combine stays bounded.

CONCAT_KEEP = 16

CONCAT_IDENTITY = ("", "", 0)


def _concat_lift(e):
    s = str(e)
    return (s[:CONCAT_KEEP], s[-CONCAT_KEEP:], len(s))


def _concat_combine(a, b):
    return (
        (a[0] + b[0])[:CONCAT_KEEP],
        (a[1] + b[1])[-CONCAT_KEEP:],
        a[2] + b[2],
    )


def _concat_lower(v):
    if v[2] <= CONCAT_KEEP:
        return v[0]
    return f"{v[0]}..{v[1]}"


# --------------------------------------------------------------------------

_FACTORIES = {
    "sum": lambda: Monoid("sum", 0, _sum_combine, _identity_fn, _identity_fn),
    "maxcount": lambda: Monoid(
        "maxcount", MAXCOUNT_IDENTITY, _maxcount_combine, _maxcount_lift, _maxcount_lower
    ),
    "geomean": lambda: Monoid(
        "geomean", (0.0, 0), _geomean_combine, _geomean_lift, _geomean_lower
    ),
    "bloom": make_bloom_monoid,
    "concat": lambda: Monoid(
        "concat", CONCAT_IDENTITY, _concat_combine, _concat_lift, _concat_lower
    ),
}

MONOID_NAMES = tuple(sorted(_FACTORIES))


def make_monoid(name: str) -> Monoid:
    """Look up a monoid by name; bloom uses the default configuration."""
    try:
        factory = _FACTORIES[name]
    except KeyError:
        raise ValueError(f"unknown monoid {name!r}; choose from {MONOID_NAMES}") from None
    return factory()


def aggregates_equal(name: str, a, b, rel_tol: float = 1e-9) -> bool:
    """Aggregate equality; geomean compares its log sum within a tolerance.

    All other monoids here are exact (integers, bit vectors, bounded
    strings), so they compare bit-for-bit.
    """
    if name == "geomean":
        return a[1] == b[1] and math.isclose(a[0], b[0], rel_tol=rel_tol, abs_tol=rel_tol)
    return a == b
