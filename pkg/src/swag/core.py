"""Sliding-window aggregation contract, baseline, and instrumentation.

The window is a FIFO queue of already-lifted aggregates: ``insert`` appends
the newest value, ``evict`` drops the oldest, and ``query`` returns the
ordered product of the whole window (the identity when empty). Engines are
single-owner objects; run one mutator at a time.
"""

from abc import ABC, abstractmethod
from collections import deque
from typing import Callable

__all__ = ["SwagEngine", "RecalcOracle", "CountingMonoid", "run_trace"]


class SwagEngine(ABC):
    """Contract shared by every window engine.

    Implementations must keep FIFO order, answer ``query`` with the
    oldest-to-newest product of the window contents, and return the monoid
    identity for an empty window. ``insert`` takes an already-lifted
    aggregate; lifting happens once at ingestion. ``evict`` on an empty
    window raises IndexError.
    """

    @abstractmethod
    def query(self):
        """Ordered product of the current window contents."""

    @abstractmethod
    def insert(self, value) -> None:
        """Append ``value`` (an aggregate) as the newest window element."""

    @abstractmethod
    def evict(self) -> None:
        """Remove the oldest window element."""

    @abstractmethod
    def __len__(self) -> int:
        """Current window size."""

    @abstractmethod
    def stored_aggregates(self) -> int:
        """How many aggregate slots the engine currently occupies."""


class RecalcOracle(SwagEngine):
    """Recalculate-from-scratch baseline: a plain queue, refolded per query.

    The fold starts from the identity, so a query over a window of size n
    performs exactly n combine calls. That convention matches the engines,
    which also combine with the identity when a sublist is empty, and keeps
    combine-count comparisons uniform.
    """

    def __init__(self, monoid, chunk_capacity=None):  # capacity ignored; uniform ctor
        self._m = monoid
        self._fifo = deque()

    def query(self):
        acc = self._m.identity
        combine = self._m.combine
        for v in self._fifo:
            acc = combine(acc, v)
        return acc

    def insert(self, value):
        self._fifo.append(value)

    def evict(self):
        if not self._fifo:
            raise IndexError("evict from an empty window")
        self._fifo.popleft()

    def __len__(self):
        return len(self._fifo)

    def stored_aggregates(self):
        return len(self._fifo)


class CountingMonoid:
    """Monoid wrapper that tallies physical combine invocations.

    Mirrors the wrapped monoid's interface so engines accept it unchanged.
    The counter increases by exactly one per combine call, including calls
    where an operand is the identity; engines never short-circuit those.
    """

    def __init__(self, inner):
        self.inner = inner
        self.calls = 0
        self.name = inner.name
        self.identity = inner.identity
        self.lift = inner.lift
        self.lower = inner.lower
        self._combine = inner.combine

    def combine(self, a, b):
        self.calls += 1
        return self._combine(a, b)

    def delta(self, op: Callable[[], object]) -> int:
        """Run ``op`` and return how many combine calls it performed."""
        before = self.calls
        op()
        return self.calls - before


def run_trace(engine: SwagEngine, ops):
    """Drive ``engine`` through a mixed op sequence; collect query outputs.

    ``ops`` is an iterable of ``("insert", value)``, ``("evict",)``, and
    ``("query",)`` tuples in any interleaving, which allows dynamically
    sized windows. Evicting an empty window propagates the engine's
    IndexError.
    """
    out = []
    for op in ops:
        kind = op[0]
        if kind == "insert":
            engine.insert(op[1])
        elif kind == "evict":
            engine.evict()
        elif kind == "query":
            out.append(engine.query())
        else:
            raise ValueError(f"unknown trace op {kind!r}")
    return out
