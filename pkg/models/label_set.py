"""Finite label sets stored as sorted lists of closed integer intervals.

A per-input label universe can be astronomically large (a target may output
``N \\ {v}`` for ``|N| = 10**6``), so label sets are never enumerated unless a
caller asks for it explicitly.
"""

from __future__ import annotations

import operator
from bisect import bisect_right
from dataclasses import dataclass, field
from itertools import accumulate
from typing import Iterable, Iterator, List, Sequence, Tuple

from models.errors import ModelViolationError

Interval = Tuple[int, int]

INT64_MIN = -(2 ** 63)
INT64_MAX = 2 ** 63 - 1


def _canonical(intervals: Iterable[Interval]) -> Tuple[Interval, ...]:
    """Sort, merge overlapping and adjacent intervals, drop nothing else."""
    ordered = sorted(intervals)
    merged: List[Interval] = []
    for lo, hi in ordered:
        if lo > hi:
            raise ModelViolationError(f"Interval [{lo}, {hi}] has lo > hi")
        if lo < INT64_MIN or hi > INT64_MAX:
            raise ModelViolationError(f"Interval [{lo}, {hi}] exceeds 64-bit label ids")
        if merged and lo <= merged[-1][1] + 1:
            if hi > merged[-1][1]:
                merged[-1] = (merged[-1][0], hi)
        else:
            merged.append((lo, hi))
    return tuple(merged)


@dataclass(frozen=True)
class LabelSet:
    """Immutable set of label ids in canonical interval form.

    Attributes:
        intervals: Sorted, disjoint, non-adjacent closed ranges ``(lo, hi)``
    """
    intervals: Tuple[Interval, ...] = ()
    _prefix: Tuple[int, ...] = field(default=(), init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        canonical = _canonical(self.intervals)
        object.__setattr__(self, 'intervals', canonical)
        sizes = (hi - lo + 1 for lo, hi in canonical)
        object.__setattr__(self, '_prefix', tuple(accumulate(sizes)))

    # Constructors

    @classmethod
    def empty(cls) -> 'LabelSet':
        return cls(())

    @classmethod
    def from_range(cls, lo: int, hi: int) -> 'LabelSet':
        """Closed range ``[lo, hi]``; empty when ``hi < lo``."""
        if hi < lo:
            return cls(())
        return cls(((lo, hi),))

    @classmethod
    def from_ids(cls, ids: Iterable[int]) -> 'LabelSet':
        return cls(tuple((int(v), int(v)) for v in ids))

    # Size and membership

    def size(self) -> int:
        return self._prefix[-1] if self._prefix else 0

    def __len__(self) -> int:
        return self.size()

    def __bool__(self) -> bool:
        return bool(self.intervals)

    def is_empty(self) -> bool:
        return not self.intervals

    def __contains__(self, label: object) -> bool:
        try:
            label = operator.index(label)  # type: ignore[arg-type]
        except TypeError:
            return False
        if not self.intervals:
            return False
        idx = bisect_right(self.intervals, (label, INT64_MAX)) - 1
        return idx >= 0 and self.intervals[idx][0] <= label <= self.intervals[idx][1]

    def __iter__(self) -> Iterator[int]:
        for lo, hi in self.intervals:
            yield from range(lo, hi + 1)

    def nth(self, k: int) -> int:
        """Return the k-th smallest label (0-based) without enumerating."""
        total = self.size()
        if not 0 <= k < total:
            raise IndexError(f"Index {k} out of range for label set of size {total}")
        idx = bisect_right(self._prefix, k)
        before = self._prefix[idx - 1] if idx else 0
        return self.intervals[idx][0] + (k - before)

    def to_list(self) -> List[int]:
        return list(self)

    # Set algebra

    def union(self, other: 'LabelSet') -> 'LabelSet':
        return LabelSet(self.intervals + other.intervals)

    def intersection(self, other: 'LabelSet') -> 'LabelSet':
        result: List[Interval] = []
        a, b = self.intervals, other.intervals
        i = j = 0
        while i < len(a) and j < len(b):
            lo = max(a[i][0], b[j][0])
            hi = min(a[i][1], b[j][1])
            if lo <= hi:
                result.append((lo, hi))
            if a[i][1] < b[j][1]:
                i += 1
            else:
                j += 1
        return LabelSet(tuple(result))

    def difference(self, other: 'LabelSet') -> 'LabelSet':
        result: List[Interval] = []
        b = other.intervals
        j = 0
        for lo, hi in self.intervals:
            cur = lo
            while j < len(b) and b[j][1] < cur:
                j += 1
            k = j
            while k < len(b) and b[k][0] <= hi:
                if b[k][0] > cur:
                    result.append((cur, b[k][0] - 1))
                cur = max(cur, b[k][1] + 1)
                if cur > hi:
                    break
                k += 1
            if cur <= hi:
                result.append((cur, hi))
        return LabelSet(tuple(result))

    def intersection_size(self, other: 'LabelSet') -> int:
        total = 0
        a, b = self.intervals, other.intervals
        i = j = 0
        while i < len(a) and j < len(b):
            lo = max(a[i][0], b[j][0])
            hi = min(a[i][1], b[j][1])
            if lo <= hi:
                total += hi - lo + 1
            if a[i][1] < b[j][1]:
                i += 1
            else:
                j += 1
        return total

    def difference_size(self, other: 'LabelSet') -> int:
        return self.size() - self.intersection_size(other)

    def __and__(self, other: 'LabelSet') -> 'LabelSet':
        return self.intersection(other)

    def __or__(self, other: 'LabelSet') -> 'LabelSet':
        return self.union(other)

    def __sub__(self, other: 'LabelSet') -> 'LabelSet':
        return self.difference(other)

    def issubset(self, other: 'LabelSet') -> bool:
        return self.intersection_size(other) == self.size()

    # Serialization

    def to_json(self) -> List[List[int]]:
        return [[lo, hi] for lo, hi in self.intervals]

    @classmethod
    def from_json(cls, data: Sequence[Sequence[int]]) -> 'LabelSet':
        return cls(tuple((int(lo), int(hi)) for lo, hi in data))

    def __repr__(self) -> str:
        body = ', '.join(f"{lo}" if lo == hi else f"{lo}..{hi}" for lo, hi in self.intervals)
        return f"LabelSet({{{body}}})"
