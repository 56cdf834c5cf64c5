"""Chunked double-ended queue with worst-case O(1) ends and stable cursors.

Storage is a doubly-linked chain of fixed-capacity slabs. Growing never
relocates elements, so a cursor captured at an element keeps reading that
element until it is popped. A fresh tail slab is linked as soon as the
current one fills, which guarantees the one-past-end position is always an
allocated slot; cursor navigation therefore never needs to special-case a
slab boundary at the end.

None of push_back / pop_front / pop_back / cursor navigation loops over
elements, so each runs in a bounded number of steps regardless of length.
The structure is single-owner: hand it between threads if you like, but do
not mutate it from two threads at once.
"""

DEFAULT_CHUNK_CAPACITY = 256

# Vacated slots hold this marker so reads through stale or out-of-range
# cursors fail fast instead of returning garbage.
_EMPTY = object()

__all__ = ["ChunkedDeque", "Cursor", "DEFAULT_CHUNK_CAPACITY"]


class _Chunk:
    __slots__ = ("slots", "prev", "next")

    def __init__(self, capacity):
        self.slots = [_EMPTY] * capacity
        self.prev = None
        self.next = None


class Cursor:
    """A stable position inside a ChunkedDeque.

    Cursors are immutable values: ``next``/``prev`` return new cursors, and
    assignment is ordinary Python binding. Supported operations are read,
    write, equality, increment, and decrement, each O(1). A cursor is valid
    while it addresses a live element or the one-past-end position.
    """

    __slots__ = ("_chunk", "_offset")

    def __init__(self, chunk, offset):
        self._chunk = chunk
        self._offset = offset

    def read(self):
        v = self._chunk.slots[self._offset]
        if v is _EMPTY:
            raise IndexError("cursor does not address a live element")
        return v

    def write(self, value):
        slots = self._chunk.slots
        if slots[self._offset] is _EMPTY:
            raise IndexError("cursor does not address a live element")
        slots[self._offset] = value

    def next(self):
        off = self._offset + 1
        chunk = self._chunk
        if off == len(chunk.slots):
            chunk = chunk.next
            if chunk is None:
                raise IndexError("cursor incremented past the last chunk")
            off = 0
        return Cursor(chunk, off)

    def prev(self):
        if self._offset == 0:
            chunk = self._chunk.prev
            if chunk is None:
                raise IndexError("cursor decremented before the first chunk")
            return Cursor(chunk, len(chunk.slots) - 1)
        return Cursor(self._chunk, self._offset - 1)

    def __eq__(self, other):
        if not isinstance(other, Cursor):
            return NotImplemented
        return self._chunk is other._chunk and self._offset == other._offset

    def __repr__(self):
        return f"Cursor(chunk=0x{id(self._chunk):x}, offset={self._offset})"


class ChunkedDeque:
    """Resizable FIFO/LIFO deque of fixed-size chunks.

    All chunks between the first and last are full. One freed chunk is kept
    in a single-slot cache so steady-state sliding does not churn the
    allocator.
    """

    __slots__ = ("_capacity", "_head", "_tail", "_head_off", "_tail_off",
                 "_length", "_spare")

    def __init__(self, chunk_capacity: int = DEFAULT_CHUNK_CAPACITY):
        if chunk_capacity < 1:
            raise ValueError("chunk capacity must be at least 1")
        self._capacity = chunk_capacity
        first = _Chunk(chunk_capacity)
        self._head = first
        self._tail = first
        self._head_off = 0
        self._tail_off = 0
        self._length = 0
        self._spare = None

    def __len__(self):
        return self._length

    @property
    def chunk_capacity(self):
        return self._capacity

    def push_back(self, value):
        """Append ``value``; existing cursors stay valid."""
        tail = self._tail
        tail.slots[self._tail_off] = value
        self._tail_off += 1
        self._length += 1
        if self._tail_off == self._capacity:
            # Link the next slab now so the end position is always a real slot.
            nxt = self._take_chunk()
            nxt.prev = tail
            tail.next = nxt
            self._tail = nxt
            self._tail_off = 0

    def pop_front(self):
        """Drop the oldest element."""
        if self._length == 0:
            raise IndexError("pop from an empty deque")
        head = self._head
        head.slots[self._head_off] = _EMPTY
        self._head_off += 1
        self._length -= 1
        if self._head_off == self._capacity:
            # The tail slab is never full, so a drained head has a successor.
            nxt = head.next
            nxt.prev = None
            self._head = nxt
            self._head_off = 0
            self._retire(head)

    def pop_back(self):
        """Drop the newest element."""
        if self._length == 0:
            raise IndexError("pop from an empty deque")
        if self._tail_off == 0:
            empty = self._tail
            tail = empty.prev
            tail.next = None
            self._tail = tail
            self._tail_off = self._capacity
            self._retire(empty)
        self._tail_off -= 1
        self._tail.slots[self._tail_off] = _EMPTY
        self._length -= 1

    def cursor_begin(self) -> Cursor:
        """Cursor at the oldest element, or at the end position if empty."""
        return Cursor(self._head, self._head_off)

    def cursor_end(self) -> Cursor:
        """Cursor one past the newest element."""
        return Cursor(self._tail, self._tail_off)

    def __iter__(self):
        # Snapshot iteration; do not mutate while iterating.
        chunk = self._head
        off = self._head_off
        capacity = self._capacity
        for _ in range(self._length):
            yield chunk.slots[off]
            off += 1
            if off == capacity:
                chunk = chunk.next
                off = 0

    def chunk_count(self) -> int:
        """Number of linked slabs (introspection for tests and audits)."""
        count = 0
        chunk = self._head
        while chunk is not None:
            count += 1
            chunk = chunk.next
        return count

    def _take_chunk(self):
        spare = self._spare
        if spare is not None:
            self._spare = None
            return spare
        return _Chunk(self._capacity)

    def _retire(self, chunk):
        chunk.prev = None
        chunk.next = None
        if self._spare is None:
            self._spare = chunk
