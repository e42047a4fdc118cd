"""Integer partitions: enumeration, counting, conjugation.

Partitions index nilpotent conjugacy classes, torus fixed points and the
summands of intersection cohomology stalks, so the rest of the package leans
on this module heavily.  Enumeration and counting are implemented by two
independent routes (explicit recursion vs. dynamic programming) so they can
cross-check each other in tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache


@dataclass(frozen=True)
class Partition:
    """A weakly decreasing tuple of positive integers."""

    parts: tuple[int, ...] = ()

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        object.__setattr__(self, "parts", parts)
        if any(p <= 0 for p in parts):
            raise ValueError(f"partition parts must be positive: {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"partition parts must be weakly decreasing: {parts}")

    @property
    def size(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    def conjugate(self) -> "Partition":
        if not self.parts:
            return Partition()
        cols = [0] * self.parts[0]
        for p in self.parts:
            for i in range(p):
                cols[i] += 1
        return Partition(tuple(cols))

    def __iter__(self):
        return iter(self.parts)

    def __len__(self):
        return len(self.parts)

    def __str__(self):
        return "(" + ",".join(str(p) for p in self.parts) + ")"

    @property
    def key(self) -> str:
        """Compact text form, e.g. ``2+1`` (empty partition: ``0``)."""
        return "+".join(str(p) for p in self.parts) if self.parts else "0"


def partitions(n: int, max_part: int | None = None) -> list[Partition]:
    """All partitions of n in reverse lexicographic order, largest part first."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if max_part is None:
        max_part = n
    out: list[Partition] = []

    def rec(remaining: int, cap: int, prefix: tuple[int, ...]):
        if remaining == 0:
            out.append(Partition(prefix))
            return
        for first in range(min(remaining, cap), 0, -1):
            rec(remaining - first, first, prefix + (first,))

    rec(n, max_part, ())
    return out


@lru_cache(maxsize=None)
def partition_count(n: int) -> int:
    """p(n), computed by the bounded-part recurrence (no enumeration)."""
    if n < 0:
        raise ValueError("n must be nonnegative")

    @lru_cache(maxsize=None)
    def bounded(m: int, cap: int) -> int:
        if m == 0:
            return 1
        if cap == 0:
            return 0
        return sum(bounded(m - first, min(first, m - first)) for first in range(1, min(cap, m) + 1))

    return bounded(n, n)


@lru_cache(maxsize=None)
def partition_count_by_length(n: int, k: int) -> int:
    """Number of partitions of n with exactly k parts."""
    if n < 0 or k < 0:
        raise ValueError("arguments must be nonnegative")
    if n == 0:
        return 1 if k == 0 else 0
    if k == 0 or k > n:
        return 0
    # remove one box from each part / split off a part equal to 1
    return partition_count_by_length(n - k, k) + partition_count_by_length(n - 1, k - 1)
