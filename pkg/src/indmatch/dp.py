"""Three-colour dynamic program over a nice path decomposition.

Colours of a bag vertex:

* 0: deleted;
* 1: kept, and so far isolated (waiting for a partner introduced later);
* 2: kept, and already matched to exactly one kept neighbor.

A table maps colourings of the current bag (tuples aligned with the sorted
bag) to the minimum number of deletions among processed vertices. Only
finite entries are stored; a missing colouring costs ``inf``. Ties are broken
towards deleting smaller vertex ids: each entry also carries the weight
``sum(2 ** (n - 1 - rank(v)))`` of its deletions, and the heavier entry wins,
which makes the reconstructed set the lexicographically smallest optimum.

Forgetting a colour-1 vertex would leave it as a singleton component, which
is not allowed, so forget nodes only take colours 0 and 2. The relaxed rule
that also accepts colour 1 (components of size at most two) is kept behind
``forget_rule="literal"`` for comparison.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass, field
from typing import Optional

from .errors import ContractError
from .graph import Graph
from .oracle import Solution
from .pathdecomp import NicePathDecomposition, validate_nice

CORRECTED = "corrected"
LITERAL = "literal"


@dataclass
class DPTable:
    bag: tuple
    costs: dict
    back: Optional[dict] = None
    inf: int = 1 << 60
    weights: dict = field(default_factory=dict)

    def cost(self, coloring: tuple) -> int:
        return self.costs.get(coloring, self.inf)

    def __len__(self):
        return len(self.costs)


def leaf_table(inf: int = 1 << 60, keep_back: bool = True) -> DPTable:
    return DPTable((), {(): 0}, {} if keep_back else None, inf, {(): 0})


def _weight(g: Graph, v: int) -> int:
    return 1 << (g.n - 1 - bisect_left(g.vertices, v))


def dp_introduce(child: DPTable, bag_after, v: int, g: Graph, keep_back: bool = True) -> DPTable:
    bag = tuple(sorted(bag_after))
    if v in child.bag or bag != tuple(sorted(child.bag + (v,))):
        raise ContractError(f"bag {bag} is not the child bag plus {v}")
    pos = bag.index(v)
    nb = [i for i, u in enumerate(child.bag) if g.has_edge(u, v)]
    costs: dict = {}
    weights: dict = {}
    back: Optional[dict] = {} if keep_back else None
    inf = child.inf
    wv = _weight(g, v)

    def put(col, cost, weight, src):
        costs[col] = min(cost, inf)
        weights[col] = weight
        if back is not None:
            back[col] = src

    for col, cost in child.costs.items():
        weight = child.weights.get(col, 0)
        put(col[:pos] + (0,) + col[pos:], cost + 1, weight + wv, col)
        live = [i for i in nb if col[i]]
        if not live:
            put(col[:pos] + (1,) + col[pos:], cost, weight, col)
        elif len(live) == 1 and col[live[0]] == 1:
            w = live[0]
            paired = col[:w] + (2,) + col[w + 1:]
            put(paired[:pos] + (2,) + paired[pos:], cost, weight, col)
    return DPTable(bag, costs, back, inf, weights)


def dp_forget(child: DPTable, bag_after, v: int, forget_rule: str = CORRECTED,
              keep_back: bool = True) -> DPTable:
    bag = tuple(sorted(bag_after))
    if v not in child.bag or bag != tuple(u for u in child.bag if u != v):
        raise ContractError(f"bag {bag} is not the child bag minus {v}")
    pos = child.bag.index(v)
    allowed = (0, 1, 2) if forget_rule == LITERAL else (0, 2)
    costs: dict = {}
    weights: dict = {}
    back: Optional[dict] = {} if keep_back else None
    for col, cost in child.costs.items():
        if col[pos] not in allowed:
            continue
        parent = col[:pos] + col[pos + 1:]
        weight = child.weights.get(col, 0)
        if (cost, -weight) < (costs.get(parent, child.inf), -weights.get(parent, 0)):
            costs[parent] = cost
            weights[parent] = weight
            if back is not None:
                back[parent] = col
    return DPTable(bag, costs, back, child.inf, weights)


@dataclass
class DPTrace:
    table_sizes: list = field(default_factory=list)
    final_cost: Optional[int] = None

    def to_dict(self) -> dict:
        return {"table_sizes": self.table_sizes, "final_cost": self.final_cost}


def _step(table: DPTable, npd: NicePathDecomposition, t: int, g: Graph,
          forget_rule: str, keep_back: bool) -> DPTable:
    tag, v = npd.ops[t]
    if tag == "I":
        return dp_introduce(table, npd.bags[t], v, g, keep_back)
    if tag == "F":
        return dp_forget(table, npd.bags[t], v, forget_rule, keep_back)
    raise ContractError(f"unexpected node type {tag!r} at position {t}")


def _forward(g, npd, forget_rule, keep_back, upto=None, trace=None):
    table = leaf_table(g.n + 1, keep_back)
    tables = [table] if keep_back else None
    if trace is not None:
        trace.table_sizes.append(1)
    end = len(npd.bags) if upto is None else upto + 1
    for t in range(1, end):
        table = _step(table, npd, t, g, forget_rule, keep_back)
        if tables is not None:
            tables.append(table)
        if trace is not None:
            trace.table_sizes.append(len(table))
    return table, tables


def _child_coloring_introduce(g, bag, col, v):
    pos = bag.index(v)
    child = list(col[:pos] + col[pos + 1:])
    if col[pos] == 2:
        child_bag = bag[:pos] + bag[pos + 1:]
        w = next(i for i, u in enumerate(child_bag) if child[i] and g.has_edge(u, v))
        child[w] = 1
    return tuple(child)


def _reconstruct_low_memory(g, npd, forget_rule, final_cost):
    deleted = set()
    col, (cost, weight) = (), final_cost
    for t in range(len(npd.bags) - 1, 0, -1):
        tag, v = npd.ops[t]
        bag = tuple(sorted(npd.bags[t]))
        if tag == "I":
            if col[bag.index(v)] == 0:
                deleted.add(v)
                cost -= 1
                weight -= _weight(g, v)
            col = _child_coloring_introduce(g, bag, col, v)
        else:
            child, _ = _forward(g, npd, forget_rule, keep_back=False, upto=t - 1)
            pos = child.bag.index(v)
            colors = (0, 1, 2) if forget_rule == LITERAL else (0, 2)
            col = next(c for c in (col[:pos] + (a,) + col[pos:] for a in colors)
                       if child.cost(c) == cost and child.weights[c] == weight)
    return deleted


def _run(g: Graph, npd: NicePathDecomposition, forget_rule: str, low_memory: bool,
         trace: Optional[DPTrace]):
    if not validate_nice(g, npd):
        raise ContractError("not a valid nice path decomposition of the graph")
    final, tables = _forward(g, npd, forget_rule, keep_back=not low_memory, trace=trace)
    size = final.cost(())
    if trace is not None:
        trace.final_cost = size
    if low_memory:
        target = (size, final.weights.get((), 0))
        return size, frozenset(_reconstruct_low_memory(g, npd, forget_rule, target))
    deleted = set()
    col = ()
    for t in range(len(npd.bags) - 1, 0, -1):
        tag, v = npd.ops[t]
        table = tables[t]
        if tag == "I" and col[table.bag.index(v)] == 0:
            deleted.add(v)
        col = table.back[col]
    return size, frozenset(deleted)


def solve_dp(g: Graph, npd: NicePathDecomposition, low_memory: bool = False,
             trace: Optional[DPTrace] = None) -> tuple[int, Solution]:
    """Minimum deletion set leaving an induced matching, with its certificate.

    ``low_memory`` drops the back-pointers and recomputes child tables on the
    backward pass instead (quadratic in the decomposition length).
    """
    size, deleted = _run(g, npd, CORRECTED, low_memory, trace)
    solution = Solution.from_deletion(g, deleted)
    assert solution.size == size
    return size, solution


def solve_dp_relaxed(g: Graph, npd: NicePathDecomposition,
                     trace: Optional[DPTrace] = None) -> tuple[int, frozenset]:
    """Same program with the forget rule that also admits colour 1.

    This computes a minimum set whose removal leaves maximum degree <= 1
    (isolated vertices allowed), i.e. a minimum dissociation-set complement.
    """
    return _run(g, npd, LITERAL, False, trace)
