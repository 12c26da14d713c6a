"""Exact-arithmetic moment sequences and a brute-force r-plane-tree oracle.

All counting here is done in exact integers / rationals. The tree
enumerator is deliberately naive (Dyck-word successor iteration plus a
backtracking colouring count): it serves as an independent check of the
closed-form generalized Catalan numbers, so it must not share any
formula with them.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Iterator

from .errors import InvalidOrderError, ResourceLimitError

__all__ = [
    "catalan",
    "gen_catalan",
    "limit_moment",
    "fuss_catalan",
    "dh_moment",
    "dh_scaled_gen_catalan",
    "PlaneTree",
    "RPlaneTree",
    "enumerate_plane_trees",
    "count_r_plane_trees",
    "iter_r_plane_trees",
]

DEFAULT_VERTEX_CAP = 12


def catalan(k: int) -> int:
    """k-th Catalan number."""
    if k < 0:
        raise InvalidOrderError(f"order {k} < 0")
    return comb(2 * k, k) // (k + 1)


def gen_catalan(r: int, k: int) -> int:
    """Generalized Catalan number (r/(k+1)) * C((r+1)k, k), exactly."""
    if r < 1:
        raise InvalidOrderError(f"r = {r} < 1")
    if k < 0:
        raise InvalidOrderError(f"order {k} < 0")
    num = r * comb((r + 1) * k, k)
    q, rem = divmod(num, k + 1)
    assert rem == 0, "generalized Catalan numbers are integers"
    return q


def limit_moment(r: int, k: int) -> Fraction:
    """k-th moment of the order-r limit law: C((r+1)k, k)/(k+1)."""
    if r < 1:
        raise InvalidOrderError(f"r = {r} < 1")
    if k < 0:
        raise InvalidOrderError(f"order {k} < 0")
    return Fraction(comb((r + 1) * k, k), k + 1)


def fuss_catalan(r: int, k: int) -> int:
    """Fuss-Catalan number C(rk+k, k)/(rk+1), exactly."""
    if r < 1:
        raise InvalidOrderError(f"r = {r} < 1")
    if k < 0:
        raise InvalidOrderError(f"order {k} < 0")
    num = comb(r * k + k, k)
    q, rem = divmod(num, r * k + 1)
    assert rem == 0, "Fuss-Catalan numbers are integers"
    return q


def dh_moment(k: int) -> Fraction:
    """k-th moment of the triangular-matrix limit law: k^k/((k+1) k!)."""
    if k < 0:
        raise InvalidOrderError(f"order {k} < 0")
    return Fraction(k**k, (k + 1) * factorial(k))


def dh_scaled_gen_catalan(r: int, k: int) -> Fraction:
    """gen_catalan(r, k) / r^(k+1); converges to dh_moment(k) as r grows."""
    return Fraction(gen_catalan(r, k), r ** (k + 1))


# -- plane trees ---------------------------------------------------------


def _is_dyck(word: tuple[int, ...]) -> bool:
    s = 0
    for step in word:
        s += 1 if step else -1
        if s < 0:
            return False
    return s == 0


def _first_dyck(m: int) -> list[int]:
    return [1] * m + [0] * m


def _next_dyck(word: list[int]) -> bool:
    """Advance to the next balanced word in place; False when exhausted.

    Words are visited in decreasing lexicographic order with up-steps
    sorting high, starting from 1^m 0^m and ending at (10)^m.
    """
    n = len(word)
    prefix = 0
    sums = []
    for step in word:
        prefix += 1 if step else -1
        sums.append(prefix)
    for i in range(n - 1, -1, -1):
        before = sums[i - 1] if i > 0 else 0
        if word[i] == 1 and before >= 1:
            ones_left = sum(word[i + 1:]) + 1  # the flipped up-step moves into the suffix
            zeros_left = (n - 1 - i) - ones_left
            if zeros_left < 0:
                continue
            word[i] = 0
            word[i + 1:] = [1] * ones_left + [0] * zeros_left
            return True
    return False


@dataclass(frozen=True)
class PlaneTree:
    """Rooted ordered tree encoded by its depth-first Dyck word.

    Vertices are numbered in preorder; ``parent[v]`` gives the preorder
    index of v's parent (-1 for the root).
    """

    word: tuple[int, ...]
    parent: tuple[int, ...]

    @classmethod
    def from_word(cls, word) -> "PlaneTree":
        word = tuple(int(w) for w in word)
        if not _is_dyck(word):
            raise ValueError(f"not a balanced Dyck word: {word}")
        parent = [-1]
        stack = [0]
        nxt = 1
        for step in word:
            if step:
                parent.append(stack[-1])
                stack.append(nxt)
                nxt += 1
            else:
                stack.pop()
        return cls(word, tuple(parent))

    @property
    def n_vertices(self) -> int:
        return len(self.parent)

    def edges(self) -> list[tuple[int, int]]:
        return [(self.parent[v], v) for v in range(1, self.n_vertices)]


@dataclass(frozen=True)
class RPlaneTree:
    """A plane tree with vertex colours in {1..r}, colour sums <= r+1 on edges."""

    tree: PlaneTree
    colours: tuple[int, ...]
    r: int

    def __post_init__(self):
        if len(self.colours) != self.tree.n_vertices:
            raise ValueError("one colour per vertex required")
        if any(c < 1 or c > self.r for c in self.colours):
            raise ValueError(f"colours must lie in 1..{self.r}")
        for u, v in self.tree.edges():
            if self.colours[u] + self.colours[v] > self.r + 1:
                raise ValueError(f"edge ({u},{v}) violates the colour-sum bound")


def enumerate_plane_trees(n: int, max_vertices: int = DEFAULT_VERTEX_CAP) -> Iterator[PlaneTree]:
    """All plane trees on n vertices, exactly once each (catalan(n-1) trees)."""
    if n < 1:
        raise InvalidOrderError(f"vertex count {n} < 1")
    if n > max_vertices:
        raise ResourceLimitError(f"vertex count {n} exceeds cap {max_vertices}")
    if n == 1:
        yield PlaneTree.from_word(())
        return
    word = _first_dyck(n - 1)
    while True:
        yield PlaneTree.from_word(word)
        if not _next_dyck(word):
            return


def _count_colourings(parent: tuple[int, ...], r: int) -> int:
    """Backtracking count of admissible colourings of one tree."""
    n = len(parent)
    colour = [0] * n

    def rec(v: int) -> int:
        if v == n:
            return 1
        top = r if v == 0 else min(r, r + 1 - colour[parent[v]])
        total = 0
        for c in range(1, top + 1):
            colour[v] = c
            total += rec(v + 1)
        return total

    return rec(0)


def count_r_plane_trees(r: int, n: int, max_vertices: int = DEFAULT_VERTEX_CAP) -> int:
    """Exhaustive count of coloured plane trees on n vertices."""
    if r < 1:
        raise InvalidOrderError(f"r = {r} < 1")
    total = 0
    for tree in enumerate_plane_trees(n, max_vertices=max_vertices):
        total += _count_colourings(tree.parent, r)
    return total


def iter_r_plane_trees(r: int, n: int, max_vertices: int = DEFAULT_VERTEX_CAP) -> Iterator[RPlaneTree]:
    """Materialize every admissible (tree, colouring) pair; small n only."""
    for tree in enumerate_plane_trees(n, max_vertices=max_vertices):
        m = tree.n_vertices
        colour = [0] * m

        def rec(v: int) -> Iterator[tuple[int, ...]]:
            if v == m:
                yield tuple(colour)
                return
            top = r if v == 0 else min(r, r + 1 - colour[tree.parent[v]])
            for c in range(1, top + 1):
                colour[v] = c
                yield from rec(v + 1)

        for cols in rec(0):
            yield RPlaneTree(tree, cols, r)
