"""Worst-case O(1) window engines built on an incremental flip.

Instead of reversing aggregation direction in one expensive pass, these
engines flip early (when the front and back halves reach equal size) and
spread the reversal over subsequent operations. Four cursors between the
deque ends bound the sublists still being repaired; every insert or evict
runs one fixed-size repair step, so no single operation ever exceeds a
small constant number of combine calls.

The repair step has four cases. ``singleton`` re-anchors the cursors around
a one-element window. ``flip`` relabels the outer sublists as the inner
ones by moving cursors only. ``shrink`` retires one element from each inner
sublist, updating two aggregates. ``shift`` slides the collapsed inner
cursors one step toward the back. A flip falls through into the same call's
shift-or-shrink choice, which is what keeps the per-operation combine
counts at their stated worst case.
"""

from .chunked_deque import DEFAULT_CHUNK_CAPACITY, ChunkedDeque
from .core import SwagEngine

__all__ = ["Daba", "DabaLite"]


def _exact_eq(a, b):
    return a == b


class _Record:
    """One deque slot: the lifted value plus a partial aggregate."""

    __slots__ = ("val", "agg")

    def __init__(self, val, agg):
        self.val = val
        self.agg = agg


class _SixCursorEngine(SwagEngine):
    """Shared plumbing for the six-cursor engines.

    The front and end cursors always coincide with the deque's begin and
    end; the four stored cursors satisfy begin <= L <= R <= A <= B <= end
    after every operation.
    """

    def __init__(self, monoid, chunk_capacity: int = DEFAULT_CHUNK_CAPACITY,
                 record_cases: bool = False, debug: bool = False):
        self._m = monoid
        self._combine = monoid.combine
        self._deque = ChunkedDeque(chunk_capacity)
        end = self._deque.cursor_end()
        self._l = end
        self._r = end
        self._a = end
        self._b = end
        self.case_log = [] if record_cases else None
        self._debug = debug

    def __len__(self):
        return len(self._deque)

    def _positions(self):
        """Indices of the four stored cursors plus the window size.

        O(n) walk used by audits and debug checks only; raises if a cursor
        no longer lies between begin and end.
        """
        li = ri = ai = bi = None
        cur = self._deque.cursor_begin()
        end = self._deque.cursor_end()
        i = 0
        while True:
            if li is None and cur == self._l:
                li = i
            if ri is None and cur == self._r:
                ri = i
            if ai is None and cur == self._a:
                ai = i
            if bi is None and cur == self._b:
                bi = i
            if cur == end:
                break
            cur = cur.next()
            i += 1
        if None in (li, ri, ai, bi):
            raise AssertionError("a cursor points outside the window")
        if not (li <= ri <= ai <= bi):
            raise AssertionError(f"cursor order violated: {li} {ri} {ai} {bi}")
        return li, ri, ai, bi, i

    def _sublist_sizes(self):
        li, ri, ai, bi, n = self._positions()
        return {"front": bi, "left": ri - li, "right": ai - ri,
                "accum": bi - ai, "back": n - bi}

    def _check_fixup_precondition(self):
        s = self._sublist_sizes()
        ok = (s["front"] == 0 and s["back"] == 1) or (
            s["left"] + s["right"] + s["accum"] == s["front"] - s["back"]
            and s["left"] == s["right"]
        )
        if not ok:
            raise AssertionError(f"fixup precondition violated: {s}")

    def check_size_invariant(self):
        """Assert the steady-state size invariant (O(n); tests only)."""
        s = self._sublist_sizes()
        ok = (s["front"] == 0 and s["back"] == 0) or (
            s["left"] + s["right"] + s["accum"] + 1 == s["front"] - s["back"]
            and s["left"] == s["right"]
        )
        if not ok:
            raise AssertionError(f"size invariant violated: {s}")


class Daba(_SixCursorEngine):
    """Six-cursor engine over (value, aggregate) records.

    Worst case per operation: 1 combine per query, 4 per insert, 3 per
    evict; steady-state averages are 2.5 and 1.5 for insert and evict.
    Storage is two aggregates per window element.
    """

    def _agg_front(self):
        begin = self._deque.cursor_begin()
        if begin == self._b:
            return self._m.identity
        return begin.read().agg

    def _agg_back(self):
        end = self._deque.cursor_end()
        if self._b == end:
            return self._m.identity
        return end.prev().read().agg

    def _agg_left(self):
        if self._l == self._r:
            return self._m.identity
        return self._l.read().agg

    def _agg_right(self):
        if self._r == self._a:
            return self._m.identity
        return self._a.prev().read().agg

    def _agg_accum(self):
        if self._a == self._b:
            return self._m.identity
        return self._a.read().agg

    def query(self):
        return self._combine(self._agg_front(), self._agg_back())

    def insert(self, value):
        agg = self._combine(self._agg_back(), value)  # read before the push
        self._deque.push_back(_Record(value, agg))
        self._fixup()

    def evict(self):
        if len(self._deque) == 0:
            raise IndexError("evict from an empty window")
        self._deque.pop_front()
        self._fixup()

    def _fixup(self):
        if self._debug:
            self._check_fixup_precondition()
        log = self.case_log
        begin = self._deque.cursor_begin()
        end = self._deque.cursor_end()
        if begin == self._b:  # singleton
            self._b = end
            self._a = end
            self._r = end
            self._l = end
            if log is not None:
                log.append("singleton")
        else:
            if self._l == self._b:  # flip
                self._l = begin
                self._a = end
                self._b = end
                if log is not None:
                    log.append("flip")
            if self._l == self._r:  # shift
                self._a = self._a.next()
                self._r = self._r.next()
                self._l = self._l.next()
                if log is not None:
                    log.append("shift")
            else:  # shrink
                combine = self._combine
                rec = self._l.read()
                rec.agg = combine(
                    combine(self._agg_left(), self._agg_right()), self._agg_accum()
                )
                self._l = self._l.next()
                prev_a = self._a.prev()
                rec = prev_a.read()
                rec.agg = combine(rec.val, self._agg_accum())
                self._a = prev_a
                if log is not None:
                    log.append("shrink")
        if self._debug:
            self.check_size_invariant()

    def stored_aggregates(self):
        return 2 * len(self._deque)

    def audit(self, expected, eq=_exact_eq):
        """Full-scan check of values, aggregates, and sizes (O(n), tests)."""
        combine = self._combine
        li, ri, ai, bi, n = self._positions()
        assert n == len(expected), f"size {n} != shadow {len(expected)}"
        slots = list(self._deque)
        for i, rec in enumerate(slots):
            assert eq(rec.val, expected[i]), f"value at {i}"
        s = {"front": bi, "left": ri - li, "right": ai - ri,
             "accum": bi - ai, "back": n - bi}
        ok = (s["front"] == 0 and s["back"] == 0) or (
            s["left"] + s["right"] + s["accum"] + 1 == s["front"] - s["back"]
            and s["left"] == s["right"]
        )
        assert ok, f"size invariant violated: {s}"
        # Suffix aggregates ending at the back boundary cover both the
        # leading front portion and the accumulator sublist.
        suffix = [None] * bi
        acc = None
        for i in range(bi - 1, -1, -1):
            acc = expected[i] if i == bi - 1 else combine(expected[i], acc)
            suffix[i] = acc
        for i in range(li):
            assert eq(slots[i].agg, suffix[i]), f"front agg at {i}"
        for i in range(ai, bi):
            assert eq(slots[i].agg, suffix[i]), f"accum agg at {i}"
        acc = None
        for i in range(ri - 1, li - 1, -1):
            acc = expected[i] if i == ri - 1 else combine(expected[i], acc)
            assert eq(slots[i].agg, acc), f"left agg at {i}"
        acc = None
        for i in range(ri, ai):
            acc = expected[i] if i == ri else combine(acc, expected[i])
            assert eq(slots[i].agg, acc), f"right agg at {i}"
        acc = None
        for i in range(bi, n):
            acc = expected[i] if i == bi else combine(acc, expected[i])
            assert eq(slots[i].agg, acc), f"back agg at {i}"


class DabaLite(_SixCursorEngine):
    """Six-cursor engine storing one aggregate per element plus two extras.

    ``agg_ra`` caches the product of the two middle sublists between flips;
    ``agg_b`` carries the product of the back sublist. The repair step then
    needs one less combine than with per-record value fields: worst case 1
    combine per query, 3 per insert, 2 per evict; averages 2 and 1.
    """

    def __init__(self, monoid, chunk_capacity: int = DEFAULT_CHUNK_CAPACITY,
                 record_cases: bool = False, debug: bool = False):
        super().__init__(monoid, chunk_capacity, record_cases, debug)
        self._agg_ra = monoid.identity
        self._agg_b = monoid.identity

    def _agg_front(self):
        begin = self._deque.cursor_begin()
        if begin == self._b:
            return self._m.identity
        return begin.read()

    def _agg_left(self):
        if self._l == self._r:
            return self._m.identity
        return self._l.read()

    def _agg_accum(self):
        if self._a == self._b:
            return self._m.identity
        return self._a.read()

    def query(self):
        return self._combine(self._agg_front(), self._agg_b)

    def insert(self, value):
        self._deque.push_back(value)
        self._agg_b = self._combine(self._agg_b, value)
        self._fixup()

    def evict(self):
        if len(self._deque) == 0:
            raise IndexError("evict from an empty window")
        self._deque.pop_front()
        self._fixup()

    def _fixup(self):
        if self._debug:
            self._check_fixup_precondition()
        log = self.case_log
        begin = self._deque.cursor_begin()
        end = self._deque.cursor_end()
        if begin == self._b:  # singleton
            self._b = end
            self._a = end
            self._r = end
            self._l = end
            self._agg_ra = self._m.identity
            self._agg_b = self._m.identity
            if log is not None:
                log.append("singleton")
        else:
            if self._l == self._b:  # flip
                self._l = begin
                self._a = end
                self._b = end
                self._agg_ra = self._agg_b
                self._agg_b = self._m.identity
                if log is not None:
                    log.append("flip")
            if self._l == self._r:  # shift; agg_ra goes stale but unread
                self._a = self._a.next()
                self._r = self._r.next()
                self._l = self._l.next()
                if log is not None:
                    log.append("shift")
            else:  # shrink
                combine = self._combine
                self._l.write(combine(self._agg_left(), self._agg_ra))
                self._l = self._l.next()
                prev_a = self._a.prev()
                prev_a.write(combine(prev_a.read(), self._agg_accum()))
                self._a = prev_a
                if log is not None:
                    log.append("shrink")
        if self._debug:
            self.check_size_invariant()

    def stored_aggregates(self):
        return len(self._deque) + 2

    def audit(self, expected, eq=_exact_eq):
        """Full-scan check of contents, side aggregates, and sizes."""
        combine = self._combine
        identity = self._m.identity
        li, ri, ai, bi, n = self._positions()
        assert n == len(expected), f"size {n} != shadow {len(expected)}"
        slots = list(self._deque)
        s = {"front": bi, "left": ri - li, "right": ai - ri,
             "accum": bi - ai, "back": n - bi}
        ok = (s["front"] == 0 and s["back"] == 0) or (
            s["left"] + s["right"] + s["accum"] + 1 == s["front"] - s["back"]
            and s["left"] == s["right"]
        )
        assert ok, f"size invariant violated: {s}"
        suffix = [None] * bi
        acc = None
        for i in range(bi - 1, -1, -1):
            acc = expected[i] if i == bi - 1 else combine(expected[i], acc)
            suffix[i] = acc
        for i in range(li):
            assert eq(slots[i], suffix[i]), f"front agg at {i}"
        for i in range(ai, bi):
            assert eq(slots[i], suffix[i]), f"accum agg at {i}"
        acc = None
        for i in range(ri - 1, li - 1, -1):
            acc = expected[i] if i == ri - 1 else combine(expected[i], acc)
            assert eq(slots[i], acc), f"left agg at {i}"
        for i in range(ri, ai):
            assert eq(slots[i], expected[i]), f"right value at {i}"
        for i in range(bi, n):
            assert eq(slots[i], expected[i]), f"back value at {i}"
        if li != ri:
            acc = None
            for i in range(ri, bi):
                acc = expected[i] if i == ri else combine(acc, expected[i])
            assert eq(self._agg_ra, identity if acc is None else acc), "aggRA"
        acc = identity
        for i in range(bi, n):
            acc = expected[i] if i == bi else combine(acc, expected[i])
        assert eq(self._agg_b, acc), "aggB"
