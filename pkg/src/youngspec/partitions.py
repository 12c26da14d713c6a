"""Integer partitions, Young diagrams and exact diagram calculus.

Partitions are stored weakly decreasing with trailing zeros trimmed, so
``(5, 4, 4, 1)``, ``(5, 4, 4, 1, 0)`` and ``(5, 4, 4, 1, 0, 0)`` are the
same value. Boxes are indexed ``(i, j)`` with 1-based row/column in the
English convention (row 1 on top, rows never longer than the row above).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterator, Sequence

from .errors import (
    EmptyPartitionError,
    IndexOutOfRangeError,
    InvalidDilationError,
    InvalidOrderError,
    NegativePartError,
    NotWeaklyDecreasingError,
)

__all__ = [
    "Partition",
    "make_partition",
    "conjugate",
    "contains",
    "has_box",
    "dilate",
    "staircase",
    "square",
    "balance_ratio",
    "render",
]


class Partition:
    """Immutable weakly decreasing sequence of nonnegative integer parts."""

    __slots__ = ("_parts",)

    def __init__(self, parts: Sequence[int] = ()):
        cleaned = [int(p) for p in parts]
        while cleaned and cleaned[-1] == 0:
            cleaned.pop()
        for p in cleaned:
            if p < 0:
                raise NegativePartError(f"negative part {p}")
        for a, b in zip(cleaned, cleaned[1:]):
            if a < b:
                raise NotWeaklyDecreasingError(f"parts not weakly decreasing: {a} < {b}")
        self._parts = tuple(cleaned)

    @property
    def parts(self) -> tuple[int, ...]:
        return self._parts

    def length(self) -> int:
        """Number of nonzero parts."""
        return len(self._parts)

    def weight(self) -> int:
        """Sum of the parts (number of boxes)."""
        return sum(self._parts)

    def part(self, i: int) -> int:
        """1-based part access; zero beyond the stored length."""
        if i < 1:
            raise IndexOutOfRangeError(f"row index {i} < 1")
        return self._parts[i - 1] if i <= len(self._parts) else 0

    def conjugate(self) -> "Partition":
        """Reflect the diagram in the main diagonal."""
        if not self._parts:
            return Partition()
        cols = self._parts[0]
        return Partition(tuple(sum(1 for p in self._parts if p >= j) for j in range(1, cols + 1)))

    def contains(self, other: "Partition") -> bool:
        """True iff the diagram of ``other`` fits inside this diagram."""
        return all(other.part(i) <= self.part(i) for i in range(1, other.length() + 1))

    def has_box(self, i: int, j: int) -> bool:
        """True iff box ``(i, j)`` belongs to the diagram."""
        if i < 1 or j < 1:
            raise IndexOutOfRangeError(f"box index ({i}, {j}) out of range")
        return self.part(i) >= j

    def dilate(self, n: int) -> "Partition":
        """Replace every box by an n-by-n grid of boxes."""
        if n < 1:
            raise InvalidDilationError(f"dilation factor {n} < 1")
        out: list[int] = []
        for p in self._parts:
            out.extend([n * p] * n)
        return Partition(out)

    def boxes(self) -> Iterator[tuple[int, int]]:
        for i, p in enumerate(self._parts, start=1):
            for j in range(1, p + 1):
                yield (i, j)

    def __len__(self) -> int:
        return len(self._parts)

    def __iter__(self) -> Iterator[int]:
        return iter(self._parts)

    def __getitem__(self, idx):
        return self._parts[idx]

    def __eq__(self, other) -> bool:
        return isinstance(other, Partition) and self._parts == other._parts

    def __hash__(self) -> int:
        return hash(self._parts)

    def __le__(self, other: "Partition") -> bool:
        return other.contains(self)

    def __bool__(self) -> bool:
        return bool(self._parts)

    def __repr__(self) -> str:
        return f"Partition{self._parts}"


def make_partition(parts: Sequence[int]) -> Partition:
    """Normalize an integer sequence into a partition."""
    return Partition(parts)


def conjugate(lam: Partition) -> Partition:
    return lam.conjugate()


def contains(mu: Partition, lam: Partition) -> bool:
    """True iff mu_i <= lam_i for all i."""
    return lam.contains(mu)


def has_box(lam: Partition, i: int, j: int) -> bool:
    return lam.has_box(i, j)


def dilate(lam: Partition, n: int) -> Partition:
    return lam.dilate(n)


def staircase(r: int) -> Partition:
    """The partition (r, r-1, ..., 2, 1)."""
    if r < 1:
        raise InvalidOrderError(f"staircase order {r} < 1")
    return Partition(range(r, 0, -1))


def square(r: int) -> Partition:
    """The partition with r parts all equal to r."""
    if r < 1:
        raise InvalidOrderError(f"square order {r} < 1")
    return Partition([r] * r)


def balance_ratio(lam: Partition, n: int) -> Fraction:
    """Weight of the n-fold dilation over n times its length, as an exact rational.

    Equals |lam| / len(lam) independently of n, which is why dilation
    sequences have a well-defined first spectral moment.
    """
    if not lam:
        raise EmptyPartitionError("balance ratio of the empty partition")
    if n < 1:
        raise InvalidDilationError(f"dilation factor {n} < 1")
    dilated = lam.dilate(n)
    return Fraction(dilated.weight(), n * dilated.length())


def render(lam: Partition, glyph: str = "■") -> str:
    """Rows of box glyphs in the English convention."""
    if not lam:
        return "(empty diagram)"
    return "\n".join(glyph * p for p in lam)
