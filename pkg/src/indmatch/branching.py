"""Branch-and-reduce phase: eliminate every vertex of degree at least four.

Two rules, tried in this order on a maximum-degree vertex ``u`` (degree >= 4,
smallest id on ties):

* dominated pair: some ``v`` with ``N[v] ⊆ N[u]`` exists. Either ``u`` is
  deleted, or ``u`` is matched with ``v`` and the rest of ``N(u)`` is deleted.
* neighbor pairs: otherwise either ``u`` is deleted, or ``u`` is matched with
  one neighbor ``v`` and ``(N(u) ∪ N(v)) \\ {u, v}`` is deleted.

A matched pair has no surviving neighbors, so it is removed from the working
graph at once. Vertices that become isolated can never be matched and are
deleted by :func:`reduce_isolated`.

The same rules drive the minimisation variant ("extend" mode); there the
node budget is the number of undecided vertices instead of the remaining
deletion allowance, and nothing is pruned.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field, replace
from typing import Iterator, Optional, Sequence

from .errors import ContractError
from .graph import Graph

IND = "ind"
EXTEND = "extend"


@dataclass(frozen=True)
class BranchNode:
    graph: Graph
    budget: int
    committed: frozenset = frozenset()
    paired: frozenset = frozenset()
    node_id: tuple = ()
    mode: str = IND

    @classmethod
    def root(cls, g: Graph, k: Optional[int] = None) -> "BranchNode":
        """Root node: IND mode when a budget is given, extend mode otherwise."""
        if k is None:
            return cls(g, g.n, mode=EXTEND)
        return cls(g, k, mode=IND)

    @property
    def depth(self) -> int:
        return len(self.node_id)


@dataclass(frozen=True)
class BranchingVector:
    decrements: tuple

    def __post_init__(self):
        object.__setattr__(self, "decrements", tuple(self.decrements))
        if len(self.decrements) < 2:
            raise ValueError("a branching vector needs at least two entries")
        if any(int(t) != t or t < 1 for t in self.decrements):
            raise ValueError("branching decrements must be positive integers")


@dataclass
class SearchStats:
    nodes_expanded: int = 0
    leaves: int = 0
    pruned: int = 0
    max_depth: int = 0
    rule_fire_counts: Counter = field(default_factory=Counter)

    def merge(self, other: "SearchStats") -> "SearchStats":
        return SearchStats(
            self.nodes_expanded + other.nodes_expanded,
            self.leaves + other.leaves,
            self.pruned + other.pruned,
            max(self.max_depth, other.max_depth),
            self.rule_fire_counts + other.rule_fire_counts,
        )

    def to_dict(self) -> dict:
        return {
            "nodes": self.nodes_expanded,
            "leaves": self.leaves,
            "pruned": self.pruned,
            "max_depth": self.max_depth,
            "rule_counts": dict(sorted(self.rule_fire_counts.items())),
        }


def find_branch_vertex(g: Graph) -> Optional[int]:
    """Vertex of maximum degree if that degree is at least 4, else None."""
    best, best_deg = None, 3
    for v in g.vertices:
        d = g.degree(v)
        if d > best_deg:
            best, best_deg = v, d
    return best


def find_dominated_neighbor(g: Graph, u: int) -> Optional[int]:
    """Smallest ``v != u`` with ``N[v] ⊆ N[u]``, or None."""
    closed_u = g.closed_neighborhood(u)
    for v in g.neighbors(u):
        if g.neighbor_set(v) <= closed_u:
            return v
    return None


def _removed(node: BranchNode, deleted: frozenset, pair_size: int) -> int:
    # budget decrement of a child: deletions in IND mode, all removed vertices in extend mode
    return len(deleted) + (pair_size if node.mode == EXTEND else 0)


def _delete_child(node: BranchNode, u: int, index: int) -> BranchNode:
    return BranchNode(
        node.graph.delete_vertices((u,)),
        node.budget - 1,
        node.committed | {u},
        node.paired,
        node.node_id + (index,),
        node.mode,
    )


def _pair_child(node: BranchNode, u: int, v: int, deleted: frozenset, index: int) -> BranchNode:
    return BranchNode(
        node.graph.delete_vertices(deleted | {u, v}),
        node.budget - _removed(node, deleted, 2),
        node.committed | deleted,
        node.paired | {(min(u, v), max(u, v))},
        node.node_id + (index,),
        node.mode,
    )


def branch_rule1(node: BranchNode, u: int, v: int) -> list[BranchNode]:
    """Children ``[u deleted, u matched with v]`` for a dominated neighbor ``v``."""
    g = node.graph
    if u not in g or g.degree(u) < 4:
        raise ContractError(f"vertex {u} must have degree at least 4")
    if v == u or not g.has_edge(u, v) or not g.neighbor_set(v) <= g.closed_neighborhood(u):
        raise ContractError(f"N[{v}] is not contained in N[{u}]")
    deleted = g.neighbor_set(u) - {v}
    return [_delete_child(node, u, 0), _pair_child(node, u, v, deleted, 1)]


def branch_rule2(node: BranchNode, u: int) -> list[BranchNode]:
    """Children ``[u deleted] + [u matched with v for v in N(u)]``.

    Each neighbor must have a neighbor outside ``N[u]``, so every pair child
    deletes at least ``deg(u)`` vertices.
    """
    g = node.graph
    if u not in g or g.degree(u) < 4:
        raise ContractError(f"vertex {u} must have degree at least 4")
    closed_u = g.closed_neighborhood(u)
    children = [_delete_child(node, u, 0)]
    for i, v in enumerate(g.neighbors(u), start=1):
        if g.neighbor_set(v) <= closed_u:
            raise ContractError(f"neighbor {v} of {u} has no neighbor outside N[{u}]")
        deleted = (g.neighbor_set(u) | g.neighbor_set(v)) - {u, v}
        children.append(_pair_child(node, u, v, deleted, i))
    return children


def reduce_isolated(node: BranchNode) -> BranchNode:
    """Delete every isolated vertex; each one costs a unit of budget."""
    g = node.graph
    isolated = [v for v in g.vertices if g.degree(v) == 0]
    if not isolated:
        return node
    return replace(
        node,
        graph=g.delete_vertices(isolated),
        budget=node.budget - len(isolated),
        committed=node.committed | frozenset(isolated),
    )


def search_leaves(g: Graph, k: Optional[int] = None,
                  stats: Optional[SearchStats] = None) -> Iterator[BranchNode]:
    """Depth-first branching; yields the max-degree-3 leaves in branch order.

    Only the current root-to-node path and the pending siblings along it are
    held in memory. Pass ``k=None`` for extend mode. Stats are updated in place
    as leaves are consumed, so stopping the iteration early is cheap.
    """
    if stats is None:
        stats = SearchStats()
    root = BranchNode.root(g, k)
    labels = ("rule1", "rule2") if root.mode == IND else ("rule3", "rule4")
    stack = [root]
    while stack:
        node = stack.pop()
        if node.mode == IND and node.budget < 0:
            stats.pruned += 1
            continue
        reduced = reduce_isolated(node)
        if reduced is not node:
            stats.rule_fire_counts["isolated"] += 1
            node = reduced
            if node.mode == IND and node.budget < 0:
                stats.pruned += 1
                continue
        stats.nodes_expanded += 1
        stats.max_depth = max(stats.max_depth, node.depth)
        u = find_branch_vertex(node.graph)
        if u is None:
            stats.leaves += 1
            yield node
            continue
        v = find_dominated_neighbor(node.graph, u)
        if v is not None:
            children = branch_rule1(node, u, v)
            stats.rule_fire_counts[labels[0]] += 1
        else:
            children = branch_rule2(node, u)
            stats.rule_fire_counts[labels[1]] += 1
        stack.extend(reversed(children))


def branching_number(b: BranchingVector | Sequence[int], tol: float = 1e-12) -> float:
    """Unique root > 1 of ``sum(x ** -t for t in b) = 1``, found by bisection.

    This is the same root as that of ``x^T = sum(x^(T - t_i))`` with ``T = max t_i``.
    """
    if not isinstance(b, BranchingVector):
        b = BranchingVector(tuple(b))
    ts = b.decrements
    lo, hi = 1.0, float(len(ts) + 1)
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if sum(mid ** -t for t in ts) > 1.0:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2
