"""Integer partitions as hashable tuples."""

from functools import lru_cache


class Partition(tuple):
    """A weakly decreasing tuple of positive integers.

    Trailing zeros are dropped on construction so exponent vectors such as
    ``(2, 1, 0)`` can be passed directly.
    """

    __slots__ = ()

    def __new__(cls, parts=()):
        parts = tuple(int(p) for p in parts)
        while parts and parts[-1] == 0:
            parts = parts[:-1]
        for k, p in enumerate(parts):
            if p < 1:
                raise ValueError(f"partition parts must be positive: {parts}")
            if k and parts[k - 1] < p:
                raise ValueError(f"partition parts must be weakly decreasing: {parts}")
        return tuple.__new__(cls, parts)

    @classmethod
    def from_multiset(cls, parts):
        return cls(sorted((p for p in parts if p), reverse=True))

    @property
    def parts(self):
        return tuple(self)

    @property
    def size(self):
        return sum(self)

    @property
    def length(self):
        return len(self)

    def conjugate(self):
        if not self:
            return self
        return _trusted(tuple(sum(1 for p in self if p > k) for k in range(self[0])))

    def fits_box(self, rows, cols):
        return len(self) <= rows and (not self or self[0] <= cols)

    def __repr__(self):
        return f"Partition({list(self)})"


def _trusted(parts):
    return tuple.__new__(Partition, parts)


def merge(a, b):
    """Multiset union of two partitions (the index of a product h_a h_b)."""
    if not a:
        return b
    if not b:
        return a
    return _trusted(tuple(sorted(a + b, reverse=True)))


def sort_key(p):
    """Serialization order: by size, then reverse-lexicographic on parts."""
    return (sum(p), tuple(-x for x in p))


@lru_cache(maxsize=None)
def partitions(n, max_part=None, max_length=None):
    """All partitions of *n*, largest first in lexicographic order."""
    if max_part is None:
        max_part = n
    if max_length is None:
        max_length = n
    if n == 0:
        return (_trusted(()),)
    if max_length == 0:
        return ()
    out = []
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions(n - first, first, max_length - 1):
            out.append(_trusted((first,) + rest))
    return tuple(out)


def box_partitions(rows, cols):
    """Partitions fitting inside a ``rows x cols`` rectangle, ordered by size."""
    out = []
    for size in range(rows * cols + 1):
        out.extend(partitions(size, cols, rows))
    return out
