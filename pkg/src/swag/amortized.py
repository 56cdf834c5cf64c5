"""Two-stack window engines: amortized O(1), worst-case O(n) combines.

Both engines keep the window split into a front part aggregated
oldest-to-newest suffix-wise (cheap eviction) and a back part aggregated
prefix-wise (cheap insertion). When the front runs out, a flip rebuilds it
from the back in one O(n) pass; every element moved was paid for by the
insert that pushed it, so the amortized cost per operation stays constant.
"""

from .chunked_deque import DEFAULT_CHUNK_CAPACITY, ChunkedDeque
from .core import SwagEngine

__all__ = ["TwoStacks", "TwoStacksLite"]


def _exact_eq(a, b):
    return a == b


class _Item:
    """One stack record: the lifted value and a running aggregate."""

    __slots__ = ("val", "agg")

    def __init__(self, val, agg):
        self.val = val
        self.agg = agg


def _top(stack: ChunkedDeque) -> _Item:
    return stack.cursor_end().prev().read()


class TwoStacks(SwagEngine):
    """Classic two-stack window over (value, aggregate) records.

    Eviction pops the front stack, whose aggregates run toward its bottom;
    insertion pushes the back stack, whose aggregates run toward its top.
    query and insert each cost exactly one combine; evict costs none unless
    the front stack is empty, in which case the flip costs one combine per
    element moved. Storage is two aggregates per window element.
    """

    def __init__(self, monoid, chunk_capacity: int = DEFAULT_CHUNK_CAPACITY):
        self._m = monoid
        self._combine = monoid.combine
        self._front = ChunkedDeque(chunk_capacity)
        self._back = ChunkedDeque(chunk_capacity)

    def _agg_front(self):
        if len(self._front) == 0:
            return self._m.identity
        return _top(self._front).agg

    def _agg_back(self):
        if len(self._back) == 0:
            return self._m.identity
        return _top(self._back).agg

    def query(self):
        return self._combine(self._agg_front(), self._agg_back())

    def insert(self, value):
        self._back.push_back(_Item(value, self._combine(self._agg_back(), value)))

    def evict(self):
        if len(self._front) == 0 and len(self._back) == 0:
            raise IndexError("evict from an empty window")
        if len(self._front) == 0:
            # Flip: move everything across, reversing aggregation direction.
            back = self._back
            front = self._front
            combine = self._combine
            while len(back) > 0:
                rec = _top(back)
                front.push_back(_Item(rec.val, combine(rec.val, self._agg_front())))
                back.pop_back()
        self._front.pop_back()

    def __len__(self):
        return len(self._front) + len(self._back)

    def stored_aggregates(self):
        return 2 * len(self)

    def back_size(self) -> int:
        """Size of the back stack; the next flip moves this many records."""
        return len(self._back)

    def front_size(self) -> int:
        """Size of the front stack; 0 means the next evict flips."""
        return len(self._front)

    def audit(self, expected, eq=_exact_eq):
        """Full-scan check of stack contents against the window ``expected``.

        O(n); intended for tests. The front stack stores the oldest elements
        with the oldest on top, so its physical bottom-to-top order is the
        reverse of window order.
        """
        combine = self._combine
        front = list(self._front)  # bottom to top
        back = list(self._back)
        k = len(front)
        n = k + len(back)
        assert n == len(expected), f"size {n} != shadow {len(expected)}"
        # Front: physical index j holds window element k-1-j with a running
        # suffix aggregate over window[k-1-j .. k-1].
        acc = None
        for j, rec in enumerate(front):
            v = expected[k - 1 - j]
            assert eq(rec.val, v), f"front val at {j}"
            acc = rec.val if j == 0 else combine(v, acc)
            assert eq(rec.agg, acc), f"front agg at {j}"
        # Back: physical index j holds window element k+j with a running
        # prefix aggregate over window[k .. k+j].
        acc = None
        for j, rec in enumerate(back):
            v = expected[k + j]
            assert eq(rec.val, v), f"back val at {j}"
            acc = rec.val if j == 0 else combine(acc, v)
            assert eq(rec.agg, acc), f"back agg at {j}"


class TwoStacksLite(SwagEngine):
    """Single-deque variant storing one aggregate per element plus one extra.

    The deque holds suffix aggregates before the boundary cursor and raw
    values after it; ``aggB`` carries the product of everything after the
    boundary. A flip rewrites the deque in place right-to-left and resets
    the boundary to the end. Storage is n + 1 aggregates.
    """

    def __init__(self, monoid, chunk_capacity: int = DEFAULT_CHUNK_CAPACITY):
        self._m = monoid
        self._combine = monoid.combine
        self._deque = ChunkedDeque(chunk_capacity)
        self._agg_b = monoid.identity
        self._b = self._deque.cursor_begin()

    def _agg_front(self):
        begin = self._deque.cursor_begin()
        if begin == self._b:
            return self._m.identity
        return begin.read()

    def query(self):
        return self._combine(self._agg_front(), self._agg_b)

    def insert(self, value):
        self._deque.push_back(value)
        self._agg_b = self._combine(self._agg_b, value)

    def evict(self):
        if len(self._deque) == 0:
            raise IndexError("evict from an empty window")
        begin = self._deque.cursor_begin()
        if begin == self._b:
            # Flip: rewrite each slot to the suffix product reaching the end.
            end = self._deque.cursor_end()
            combine = self._combine
            cur = end.prev()
            while cur != begin:
                cur = cur.prev()
                cur.write(combine(cur.read(), cur.next().read()))
            self._b = end
            self._agg_b = self._m.identity
        self._deque.pop_front()

    def __len__(self):
        return len(self._deque)

    def stored_aggregates(self):
        return len(self._deque) + 1

    def front_size(self) -> int:
        """Elements before the boundary; 0 means the next evict flips."""
        cur = self._deque.cursor_begin()
        count = 0
        while cur != self._b:
            count += 1
            cur = cur.next()
        return count

    def audit(self, expected, eq=_exact_eq):
        """Full-scan check of deque contents against the window ``expected``."""
        combine = self._combine
        slots = list(self._deque)
        n = len(slots)
        assert n == len(expected), f"size {n} != shadow {len(expected)}"
        b = self.front_size()
        # Suffix products up to the boundary.
        acc = None
        for i in range(b - 1, -1, -1):
            acc = expected[i] if i == b - 1 else combine(expected[i], acc)
            assert eq(slots[i], acc), f"front slot {i}"
        # Raw values after the boundary.
        for i in range(b, n):
            assert eq(slots[i], expected[i]), f"back slot {i}"
        acc = self._m.identity
        for i in range(b, n):
            acc = combine(acc, expected[i]) if i > b else expected[i]
        assert eq(self._agg_b, acc), "aggB"
