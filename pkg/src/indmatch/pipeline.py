"""Two-phase solvers: branch down to maximum degree 3, then decompose and run the DP."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional

from .branching import BranchNode, SearchStats, search_leaves
from .dp import DPTrace, solve_dp
from .graph import Graph
from .oracle import Solution, is_induced_matching
from .pathdecomp import DecompositionInfo, NicePathDecomposition, decompose_for_instance

# called once per decomposed leaf component: (component graph, decomposition, leaf budget, info)
DecompositionHook = Callable[[Graph, NicePathDecomposition, int, DecompositionInfo], None]


@dataclass
class RunStats:
    search: SearchStats = field(default_factory=SearchStats)
    leaf_widths: list = field(default_factory=list)
    gate_rejections: int = 0
    dp_calls: int = 0

    @property
    def max_width(self) -> int:
        return max(self.leaf_widths, default=-1)

    def to_dict(self) -> dict:
        d = self.search.to_dict()
        d["max_width"] = self.max_width
        d["gate_rejections"] = self.gate_rejections
        d["dp_calls"] = self.dp_calls
        return d


@dataclass
class IndAnswer:
    decision: bool
    solution: Optional[Solution]
    stats: RunStats
    k: Optional[int] = None

    def to_json(self) -> dict:
        return result_json("yes" if self.decision else "no", self.solution, self.stats, k=self.k)


@dataclass
class ExtendAnswer:
    solution: Solution
    stats: RunStats

    @property
    def size(self) -> int:
        return self.solution.size

    def to_json(self) -> dict:
        return result_json("optimal", self.solution, self.stats)


def result_json(decision: str, solution: Optional[Solution], stats: RunStats, **extra) -> dict:
    out = {
        "decision": decision,
        "solution": sorted(solution.deleted) if solution else None,
        "matching": [list(p) for p in sorted(solution.matching)] if solution else None,
        "stats": stats.to_dict(),
    }
    out.update({k: v for k, v in extra.items() if v is not None})
    return out


def dumps(answer) -> str:
    return json.dumps(answer.to_json(), sort_keys=True)


def degree3_count(g: Graph) -> int:
    return sum(1 for v in g.vertices if g.degree(v) == 3)


def _solve_leaf(node: BranchNode, stats: RunStats, threshold: Optional[int],
                hook: Optional[DecompositionHook],
                traces: Optional[list]) -> tuple[int, frozenset]:
    """Minimum deletions for a max-degree-3 leaf graph, component by component."""
    total, deleted = 0, set()
    g = node.graph
    budget = max(node.budget, 0)
    for comp in g.components():
        sub = g.subgraph(comp)
        info = DecompositionInfo()
        npd = decompose_for_instance(sub, budget, threshold, info)
        stats.leaf_widths.append(info.width)
        if hook is not None:
            hook(sub, npd, budget, info)
        trace = DPTrace() if traces is not None else None
        size, sol = solve_dp(sub, npd, trace=trace)
        if trace is not None:
            traces.append({"leaf": list(node.node_id), "component": list(comp), **trace.to_dict()})
        stats.dp_calls += 1
        total += size
        deleted |= sol.deleted
    return total, frozenset(deleted)


def _assemble(g: Graph, node: BranchNode, leaf_deleted: frozenset) -> Solution:
    solution = Solution.from_deletion(g, node.committed | leaf_deleted)
    # committed pairs must survive as components of the final residual graph
    assert node.paired <= solution.matching
    return solution


def solve_ind(g: Graph, k: int, threshold: Optional[int] = None,
              decomposition_hook: Optional[DecompositionHook] = None,
              dp_traces: Optional[list] = None) -> IndAnswer:
    """Decide whether at most ``k`` deletions leave an induced matching.

    Leaves of the branching phase are rejected outright when they have more
    than ``2.5 * budget`` vertices of degree 3; otherwise they are solved
    exactly. The first accepting leaf (in branch order) ends the search.

    ``decomposition_hook`` sees every leaf decomposition; ``dp_traces``, when
    a list, collects per-node DP table sizes for each solved component.
    """
    if k < 0:
        raise ValueError("budget must be non-negative")
    stats = RunStats()
    for leaf in search_leaves(g, k, stats.search):
        if degree3_count(leaf.graph) > 2.5 * leaf.budget:
            stats.gate_rejections += 1
            stats.search.rule_fire_counts["gate"] += 1
            continue
        size, deleted = _solve_leaf(leaf, stats, threshold, decomposition_hook, dp_traces)
        if size <= leaf.budget:
            solution = _assemble(g, leaf, deleted)
            assert solution.size <= k
            return IndAnswer(True, solution, stats, k)
    return IndAnswer(False, None, stats, k)


def solve_extend(g: Graph, threshold: Optional[int] = None,
                 decomposition_hook: Optional[DecompositionHook] = None,
                 dp_traces: Optional[list] = None) -> ExtendAnswer:
    """Minimum deletion set, by exhausting all branches and solving every leaf."""
    stats = RunStats()
    best: Optional[Solution] = None
    for leaf in search_leaves(g, None, stats.search):
        size, deleted = _solve_leaf(leaf, stats, threshold, decomposition_hook, dp_traces)
        if best is None or len(leaf.committed) + size < best.size:
            best = _assemble(g, leaf, deleted)
    return ExtendAnswer(best, stats)


def verify(g: Graph, s: Iterable[int], k: Optional[int] = None) -> bool:
    """True iff deleting ``s`` leaves an induced matching (and ``|s| <= k`` when given)."""
    s = frozenset(s)
    rest = g.delete_vertices(s)
    return is_induced_matching(rest) and (k is None or len(s) <= k)
