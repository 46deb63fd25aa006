"""Integer partitions and the rank counts of rational Sp^x bordism."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator

__all__ = [
    "Partition",
    "Decoration",
    "enumerate_partitions",
    "partitions_up_to",
    "partition_count",
    "bordism_rank",
]


@dataclass(frozen=True, order=False)
class Partition:
    """A non-increasing tuple of positive integers.

    ``weight`` is stored alongside the parts; it is checked, not recomputed,
    on construction.
    """

    parts: tuple[int, ...]
    weight: int = field(default=-1)

    def __post_init__(self) -> None:
        parts = tuple(self.parts)
        object.__setattr__(self, "parts", parts)
        if any(p <= 0 for p in parts):
            raise ValueError(f"partition parts must be positive: {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"partition parts must be non-increasing: {parts}")
        total = sum(parts)
        if self.weight == -1:
            object.__setattr__(self, "weight", total)
        elif self.weight != total:
            raise ValueError(f"weight {self.weight} does not match parts {parts}")

    @classmethod
    def of(cls, *parts: int) -> "Partition":
        """Build from parts in any order."""
        return cls(tuple(sorted(parts, reverse=True)))

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.parts)) + ")"

    def multiplicities(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for p in self.parts:
            out[p] = out.get(p, 0) + 1
        return out

    def sort_key(self) -> tuple:
        """Key realising the canonical order: by weight, then (m) before (1,...,1)."""
        return (self.weight, tuple(-p for p in self.parts))


class Decoration(str, enum.Enum):
    r = "r"
    c = "c"
    h = "h"

    def __str__(self) -> str:
        return self.value


def _partitions(n: int, largest: int) -> Iterator[tuple[int, ...]]:
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions(n - first, first):
            yield (first,) + rest


def enumerate_partitions(n: int) -> list[Partition]:
    """All partitions of ``n``, from ``(n)`` down to ``(1, ..., 1)``.

    The order is reverse lexicographic on the part tuples.

    >>> [str(p) for p in enumerate_partitions(3)]
    ['(3)', '(2,1)', '(1,1,1)']
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    return [Partition(parts, n) for parts in _partitions(n, n)]


def partitions_up_to(n: int) -> list[Partition]:
    """Partitions of 0, 1, ..., n concatenated in canonical block order."""
    out: list[Partition] = []
    for m in range(n + 1):
        out.extend(enumerate_partitions(m))
    return out


@lru_cache(maxsize=None)
def _count_table(n: int) -> tuple[int, ...]:
    # counts[j] = number of partitions of j into parts <= k, after pass k
    counts = [1] + [0] * n
    for k in range(1, n + 1):
        for j in range(k, n + 1):
            counts[j] += counts[j - k]
    return tuple(counts)


def partition_count(n: int) -> int:
    """P(n), the number of partitions of ``n``."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return _count_table(n)[n]


def bordism_rank(x: Decoration | str, degree: int) -> int:
    """Rank of the rational Sp^x (equivalently Spin^x) bordism group in ``degree``.

    ``r``: P(n) in degree 4n.  ``c``: P(0) + ... + P(n) in degrees 4n and 4n+2.
    ``h``: P(0) + ... + P(n) in degree 4n.  Zero in every other degree.
    """
    x = Decoration(x)
    if degree < 0:
        raise ValueError("degree must be non-negative")
    n, rem = divmod(degree, 4)
    if x is Decoration.r:
        return partition_count(n) if rem == 0 else 0
    if rem == 0 or (x is Decoration.c and rem == 2):
        return sum(partition_count(m) for m in range(n + 1))
    return 0
