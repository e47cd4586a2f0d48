"""Brute-force reference solver.

Everything here is deliberately naive: subsets are enumerated by increasing
size and lexicographically within a size, and each candidate is checked with
bitmask degree counts. Meant for graphs up to roughly 20 vertices.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Optional

from .graph import Graph


@dataclass(frozen=True)
class Solution:
    """A deletion set together with the matching left behind.

    ``matching`` holds the components of ``G - deleted`` as ``(u, v)`` pairs
    with ``u < v``.
    """

    deleted: frozenset
    matching: frozenset

    @property
    def size(self) -> int:
        return len(self.deleted)

    @classmethod
    def from_deletion(cls, g: Graph, deleted: Iterable[int]) -> "Solution":
        """Build a solution from a deletion set; raises if it is not valid."""
        deleted = frozenset(deleted)
        rest = g.delete_vertices(deleted)
        if not is_induced_matching(rest):
            raise ValueError("deletion set does not leave an induced matching")
        return cls(deleted, frozenset((u, v) for u, v in rest.edges()))

    def is_valid_for(self, g: Graph) -> bool:
        if not self.deleted <= set(g.vertices):
            return False
        rest = g.delete_vertices(self.deleted)
        return is_induced_matching(rest) and set(rest.edges()) == set(self.matching)


def is_induced_matching(g: Graph) -> bool:
    """True iff every vertex has degree exactly one (vacuously true when empty)."""
    return all(g.degree(v) == 1 for v in g.vertices)


def _masks(g: Graph):
    index = {v: i for i, v in enumerate(g.vertices)}
    nbr = [sum(1 << index[w] for w in g.neighbor_set(v)) for v in g.vertices]
    return index, nbr


def _valid(nbr, full, deleted_mask) -> bool:
    alive = full & ~deleted_mask
    i = 0
    m = alive
    while m:
        if m & 1 and (nbr[i] & alive).bit_count() != 1:
            return False
        m >>= 1
        i += 1
    return True


def _search(g: Graph, max_size: int) -> Optional[Solution]:
    index, nbr = _masks(g)
    full = (1 << g.n) - 1
    bits = [1 << i for i in range(g.n)]
    for size in range(min(max_size, g.n) + 1):
        for combo in combinations(range(g.n), size):
            mask = 0
            for i in combo:
                mask |= bits[i]
            if _valid(nbr, full, mask):
                return Solution.from_deletion(g, (g.vertices[i] for i in combo))
    return None


def brute_force_ind(g: Graph, k: int) -> Optional[Solution]:
    """Smallest valid deletion set of size at most ``k``, or None."""
    if k < 0:
        raise ValueError("budget must be non-negative")
    return _search(g, k)


def brute_force_extend(g: Graph) -> Solution:
    """Minimum valid deletion set (deleting everything is always valid)."""
    return _search(g, g.n)


def brute_force_min_size(g: Graph) -> int:
    return brute_force_extend(g).size
