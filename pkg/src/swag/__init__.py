"""FIFO sliding-window aggregation over arbitrary monoids.

Four engines trade worst-case guarantees against constants and space:

==================  =================  ==========  ===================
engine              combines per op    worst case  stored aggregates
==================  =================  ==========  ===================
TwoStacks           amortized O(1)     O(n)        2n
TwoStacksLite       amortized O(1)     O(n)        n + 1
Daba                worst-case O(1)    4           2n
DabaLite            worst-case O(1)    3           n + 2
==================  =================  ==========  ===================

All engines accept any associative monoid, commutative or not, invertible
or not. ``RecalcOracle`` is the O(n)-per-query baseline used for
equivalence testing.
"""

from .amortized import TwoStacks, TwoStacksLite
from .chunked_deque import ChunkedDeque, Cursor, DEFAULT_CHUNK_CAPACITY
from .core import CountingMonoid, RecalcOracle, SwagEngine, run_trace
from .deamortized import Daba, DabaLite
from .monoids import (
    MONOID_NAMES,
    Monoid,
    aggregates_equal,
    bloom_might_contain,
    make_bloom_monoid,
    make_monoid,
)

__version__ = "0.1.0"

__all__ = [
    "ChunkedDeque",
    "CountingMonoid",
    "Cursor",
    "Daba",
    "DabaLite",
    "DEFAULT_CHUNK_CAPACITY",
    "Monoid",
    "MONOID_NAMES",
    "RecalcOracle",
    "SwagEngine",
    "TwoStacks",
    "TwoStacksLite",
    "aggregates_equal",
    "bloom_might_contain",
    "make_bloom_monoid",
    "make_monoid",
    "run_trace",
]
