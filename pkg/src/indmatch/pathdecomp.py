"""Path decompositions: validation, construction, contraction and nice form.

Construction for a graph of maximum degree 3 follows a contract / decompose /
expand scheme:

1. :func:`contract` keeps only the degree-3 vertices. Every maximal chain of
   degree-<=2 vertices becomes a *red edge* (chain between two kept vertices),
   or a *red vertex* annotation (pendant chain, or a chain leaving and
   re-entering the same kept vertex). Components with no degree-3 vertex are
   stored whole as paths or cycles.
2. :func:`base_decompose` decomposes the contracted graph: exact minimum
   width (vertex separation branch and bound) for components up to a
   threshold, greedy orderings above it.
3. :func:`expand` splices one run of bags per chain right after the first bag
   holding the chain's endpoint(s). A run keeps the host bag and walks the
   chain two vertices at a time, so the width grows by at most 2.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from math import ceil
from typing import Iterable, Optional, Sequence

from .errors import ContractError, DomainError, ParseError
from .graph import Graph

DEFAULT_EXACT_THRESHOLD = 15
THRESHOLD_ENV = "INDMATCH_EXACT_THRESHOLD"


def default_threshold() -> int:
    value = os.environ.get(THRESHOLD_ENV)
    return int(value) if value else DEFAULT_EXACT_THRESHOLD


@dataclass(frozen=True)
class PathDecomposition:
    bags: tuple

    def __post_init__(self):
        object.__setattr__(self, "bags", tuple(frozenset(b) for b in self.bags))

    @property
    def width(self) -> int:
        return width(self)

    def __len__(self):
        return len(self.bags)


@dataclass(frozen=True)
class NicePathDecomposition:
    """Bag sequence with one operation per position.

    ``ops[0]`` is ``("L", None)`` on the empty leaf bag; every later position
    is ``("I", v)`` or ``("F", v)`` relative to its predecessor.
    """

    bags: tuple
    ops: tuple

    @property
    def width(self) -> int:
        return width(self)

    def as_path_decomposition(self) -> PathDecomposition:
        return PathDecomposition(self.bags)

    def __len__(self):
        return len(self.bags)


@dataclass(frozen=True)
class ContractionRecord:
    """Result of :func:`contract`.

    ``red_edges`` maps a contracted edge ``(x, y)``, ``x < y``, to the chains
    it stands for, each ordered from ``x`` towards ``y``. ``red_vertices``
    maps a kept vertex to the chains hanging off it, ordered outward.
    ``free`` lists the components without a degree-3 vertex as
    ``("path" | "cycle", vertices in order)``.
    """

    original: Graph
    contracted: Graph
    red_edges: dict = field(default_factory=dict)
    red_vertices: dict = field(default_factory=dict)
    free: tuple = ()

    def vertices_covered(self) -> set:
        vs = set(self.contracted.vertices)
        for chains in list(self.red_edges.values()) + list(self.red_vertices.values()):
            for chain in chains:
                vs.update(chain)
        for _, comp in self.free:
            vs.update(comp)
        return vs


# -- validation --------------------------------------------------------------


def validate(g: Graph, pd) -> bool:
    """Check cover, edge and interval conditions of ``pd`` against ``g``."""
    bags = pd.bags
    if not bags:
        return False
    union = frozenset().union(*bags)
    if union != frozenset(g.vertices):
        return False
    first: dict[int, int] = {}
    last: dict[int, int] = {}
    count: dict[int, int] = {}
    for i, bag in enumerate(bags):
        for v in bag:
            first.setdefault(v, i)
            last[v] = i
            count[v] = count.get(v, 0) + 1
    if any(last[v] - first[v] + 1 != count[v] for v in count):
        return False
    for u, v in g.edges():
        lo, hi = max(first[u], first[v]), min(last[u], last[v])
        if lo > hi:
            return False
    return True


def validate_nice(g: Graph, npd: NicePathDecomposition) -> bool:
    """Nice-form checks on top of :func:`validate`."""
    if not validate(g, npd) or npd.bags[0] or npd.bags[-1]:
        return False
    if npd.ops[0] != ("L", None):
        return False
    for prev, bag, (tag, v) in zip(npd.bags, npd.bags[1:], npd.ops[1:]):
        if tag == "I" and not (v not in prev and bag == prev | {v}):
            return False
        if tag == "F" and not (v in prev and bag == prev - {v}):
            return False
        if tag not in ("I", "F"):
            return False
    return True


def width(pd) -> int:
    if not pd.bags:
        raise ValueError("width of an empty bag sequence is undefined")
    return max(len(b) for b in pd.bags) - 1


# -- nice form ---------------------------------------------------------------


def make_nice(pd: PathDecomposition) -> NicePathDecomposition:
    """Leaf, then per bag: forget departing vertices, introduce arriving ones (ascending ids)."""
    bags = [frozenset()]
    ops = [("L", None)]
    current = frozenset()
    for bag in list(pd.bags) + [frozenset()]:
        for v in sorted(current - bag):
            current = current - {v}
            bags.append(current)
            ops.append(("F", v))
        for v in sorted(bag - current):
            current = current | {v}
            bags.append(current)
            ops.append(("I", v))
    return NicePathDecomposition(tuple(bags), tuple(ops))


def compress(pd) -> PathDecomposition:
    """Drop every bag contained in a neighboring bag (validity and width are kept)."""
    bags: list[frozenset] = []
    for bag in pd.bags:
        if bags and bag <= bags[-1]:
            continue
        while bags and bags[-1] <= bag:
            bags.pop()
        bags.append(bag)
    return PathDecomposition(bags or [frozenset()])


# -- orderings and exact search ----------------------------------------------


class _Masks:
    """Bitmask view of one vertex subset of a graph."""

    def __init__(self, g: Graph, verts: Sequence[int]):
        self.verts = list(verts)
        index = {v: i for i, v in enumerate(self.verts)}
        self.nbr = [sum(1 << index[w] for w in g.neighbor_set(v) if w in index) for v in self.verts]
        self.full = (1 << len(self.verts)) - 1

    def boundary(self, s: int) -> int:
        outside = self.full & ~s
        count, i, m = 0, 0, s
        while m:
            if m & 1 and self.nbr[i] & outside:
                count += 1
            m >>= 1
            i += 1
        return count

    def separation(self, order: Sequence[int]) -> int:
        s, best = 0, 0
        for i in order:
            s |= 1 << i
            best = max(best, self.boundary(s))
        return best


def _greedy_order(mk: _Masks, start: Optional[int]) -> list[int]:
    n = len(mk.verts)
    s, order = 0, []
    if start is not None:
        s, order = 1 << start, [start]
    while len(order) < n:
        best = None
        for i in range(n):
            if s >> i & 1:
                continue
            key = (mk.boundary(s | 1 << i), (mk.nbr[i] & ~s).bit_count(), mk.verts[i])
            if best is None or key < best[0]:
                best = (key, i)
        s |= 1 << best[1]
        order.append(best[1])
    return order


def _bfs_order(mk: _Masks) -> list[int]:
    n = len(mk.verts)
    seen, order = 0, []
    roots = sorted(range(n), key=lambda i: (mk.nbr[i].bit_count(), mk.verts[i]))
    for r in roots:
        if seen >> r & 1:
            continue
        seen |= 1 << r
        queue = [r]
        while queue:
            i = queue.pop(0)
            order.append(i)
            nxt = [j for j in range(n) if mk.nbr[i] >> j & 1 and not seen >> j & 1]
            for j in sorted(nxt, key=lambda j: (mk.nbr[j].bit_count(), mk.verts[j])):
                seen |= 1 << j
                queue.append(j)
    return order


def _heuristic_order(mk: _Masks) -> list[int]:
    n = len(mk.verts)
    starts = sorted(range(n), key=lambda i: (mk.nbr[i].bit_count(), mk.verts[i]))[:8]
    candidates = [_greedy_order(mk, None), _bfs_order(mk)]
    candidates += [_greedy_order(mk, s) for s in starts]
    return min(candidates, key=mk.separation)


def _exact_order(mk: _Masks) -> list[int]:
    best = _greedy_order(mk, None)
    upper = mk.separation(best)
    lower = min((m.bit_count() for m in mk.nbr), default=0)
    for w in range(lower, upper):
        found = _order_within(mk, w)
        if found is not None:
            return found
    return best


def _order_within(mk: _Masks, w: int) -> Optional[list[int]]:
    """Ordering with vertex separation <= w, or None (DFS over prefixes)."""
    n = len(mk.verts)
    failed: set[int] = set()
    order: list[int] = []

    def extend(s: int, bound: int) -> bool:
        if s == mk.full:
            return True
        if s in failed:
            return False
        # a vertex that does not enlarge the boundary can always be taken next
        for i in range(n):
            if not s >> i & 1:
                b = mk.boundary(s | 1 << i)
                if b <= bound:
                    order.append(i)
                    if extend(s | 1 << i, b):
                        return True
                    order.pop()
                    failed.add(s)
                    return False
        for i in range(n):
            if not s >> i & 1:
                b = mk.boundary(s | 1 << i)
                if b <= w:
                    order.append(i)
                    if extend(s | 1 << i, b):
                        return True
                    order.pop()
        failed.add(s)
        return False

    return list(order) if extend(0, 0) else None


def _bags_from_order(g: Graph, order: Sequence[int]) -> list[frozenset]:
    placed: set[int] = set()
    bags = []
    for v in order:
        active = {u for u in placed if any(w not in placed for w in g.neighbor_set(u))}
        bags.append(frozenset(active | {v}))
        placed.add(v)
    return bags


def vertex_order(g: Graph, verts: Sequence[int], exact: bool) -> list[int]:
    mk = _Masks(g, verts)
    idx = _exact_order(mk) if exact else _heuristic_order(mk)
    return [mk.verts[i] for i in idx]


def base_decompose(g: Graph, threshold: Optional[int] = None) -> PathDecomposition:
    """Path decomposition of ``g``, component by component.

    Components with at most ``threshold`` vertices get a minimum-width
    decomposition; larger ones a greedy one (best of several orderings).
    """
    if threshold is None:
        threshold = default_threshold()
    bags: list[frozenset] = []
    for comp in g.components():
        order = vertex_order(g, comp, exact=len(comp) <= threshold)
        bags.extend(_bags_from_order(g, order))
    return PathDecomposition(bags or [frozenset()])


def pathwidth_oracle(g: Graph) -> int:
    """Exact pathwidth by dynamic programming over all vertex subsets.

    Exponential in ``|V(g)|`` with no pruning at all; used to check the
    branch-and-bound search.
    """
    if g.n == 0:
        return -1
    mk = _Masks(g, g.vertices)
    best = {0: 0}
    for s in range(1, mk.full + 1):
        m, i, val = s, 0, None
        while m:
            if m & 1:
                prev = best[s & ~(1 << i)]
                if val is None or prev < val:
                    val = prev
            m >>= 1
            i += 1
        best[s] = max(val, mk.boundary(s))
    return best[mk.full]


# -- contraction ---------------------------------------------------------------


def _require_subcubic(g: Graph):
    if g.max_degree() > 3:
        raise DomainError("graph has a vertex of degree greater than 3")


def _free_component(g: Graph, comp: Sequence[int]):
    if len(comp) <= 2:
        return ("path", tuple(comp))
    ends = [v for v in comp if g.degree(v) <= 1]
    kind = "path" if ends else "cycle"
    start = min(ends) if ends else min(comp)
    walk, prev, cur = [start], None, start
    while True:
        nxt = [w for w in g.neighbors(cur) if w != prev and w != start]
        if not nxt:
            break
        prev, cur = cur, nxt[0]
        walk.append(cur)
    return (kind, tuple(walk))


def contract(g: Graph) -> ContractionRecord:
    """Contract every chain of degree-<=2 vertices (see module docstring)."""
    _require_subcubic(g)
    kept = {v for v in g.vertices if g.degree(v) == 3}
    red_edges: dict[tuple, list] = {}
    red_vertices: dict[int, list] = {}
    plain: set[tuple] = set()
    visited: set[int] = set()

    for x in sorted(kept):
        for y in g.neighbors(x):
            if y in kept:
                if x < y:
                    plain.add((x, y))
                continue
            if y in visited:
                continue
            chain, prev, cur = [y], x, y
            visited.add(y)
            end = None
            while True:
                nxt = [w for w in g.neighbors(cur) if w != prev]
                if not nxt:
                    break
                w = nxt[0]
                if w in kept:
                    end = w
                    break
                chain.append(w)
                visited.add(w)
                prev, cur = cur, w
            if end is None or end == x:
                red_vertices.setdefault(x, []).append(tuple(chain))
            else:
                key = (min(x, end), max(x, end))
                oriented = tuple(chain) if x < end else tuple(reversed(chain))
                red_edges.setdefault(key, []).append(oriented)

    free = []
    for comp in g.components():
        if not kept.intersection(comp):
            free.append(_free_component(g, comp))

    contracted = Graph(sorted(kept), plain | set(red_edges))
    return ContractionRecord(
        g,
        contracted,
        {k: tuple(v) for k, v in sorted(red_edges.items())},
        {k: tuple(v) for k, v in sorted(red_vertices.items())},
        tuple(free),
    )


def _run(host: frozenset, chain: Sequence[int]) -> list[frozenset]:
    bags = [host | {chain[0]}]
    for a, b in zip(chain, chain[1:]):
        bags.append(host | {a, b})
        bags.append(host | {b})
    return bags


def _free_bags(kind: str, walk: Sequence[int]) -> list[frozenset]:
    if len(walk) == 1:
        return [frozenset(walk)]
    if kind == "path":
        return [frozenset(p) for p in zip(walk, walk[1:])]
    first = walk[0]
    return [frozenset((first, a, b)) for a, b in zip(walk[1:], walk[2:])]


def expand(record: ContractionRecord, pd: PathDecomposition) -> PathDecomposition:
    """Re-insert every contracted chain into a decomposition of the contracted graph."""
    if not validate(record.contracted, pd):
        raise ContractError("decomposition is not valid for the contracted graph")
    groups = [[bag] for bag in pd.bags]

    def first_bag(*vs) -> int:
        return next(i for i, bag in enumerate(pd.bags) if all(v in bag for v in vs))

    for (x, y), chains in record.red_edges.items():
        i = first_bag(x, y)
        for chain in chains:
            groups[i].extend(_run(pd.bags[i], chain))
    for x, chains in record.red_vertices.items():
        i = first_bag(x)
        for chain in chains:
            groups[i].extend(_run(pd.bags[i], chain))

    bags = [b for group in groups for b in group]
    for kind, walk in record.free:
        bags.extend(_free_bags(kind, walk))
    # drop empty bags unless nothing else is left
    nonempty = [b for b in bags if b]
    return PathDecomposition(nonempty or [frozenset()])


# -- per-instance construction -------------------------------------------------


@dataclass
class DecompositionInfo:
    """How a decomposition was built; filled in by :func:`decompose_for_instance`."""

    width: int = -1
    contracted_vertices: int = 0
    expanded_width: int = -1
    direct_width: Optional[int] = None
    exact: bool = True


def degree3_width_bound(k: int) -> int:
    """Width guaranteed for max-degree-3 yes-candidates with budget k."""
    return ceil(2.5 * k / 6) + 2


def decompose_for_instance(g: Graph, k: int, threshold: Optional[int] = None,
                           info: Optional[DecompositionInfo] = None) -> NicePathDecomposition:
    """Nice path decomposition of a max-degree-3 graph via contract / decompose / expand.

    When a component is small enough for exact search, its minimum-width
    decomposition is also computed and the narrower of the two is kept.
    ``k`` only feeds the recorded bound; the caller is expected to have
    checked the degree-3 count against it.
    """
    _require_subcubic(g)
    if threshold is None:
        threshold = default_threshold()
    if info is None:
        info = DecompositionInfo()
    record = contract(g)
    base = base_decompose(record.contracted, threshold)
    expanded = expand(record, base)
    info.contracted_vertices = record.contracted.n
    info.expanded_width = expanded.width
    info.exact = all(len(c) <= threshold for c in record.contracted.components())
    chosen = expanded
    # the contracted graph is a minor of g, so an exact base that expansion did
    # not widen is already optimal
    if g.n <= threshold and not (info.exact and expanded.width <= base.width):
        direct = base_decompose(g, threshold)
        info.direct_width = direct.width
        if direct.width < expanded.width:
            chosen = direct
    info.width = chosen.width
    return make_nice(chosen)


# -- text form -----------------------------------------------------------------


def serialize_decomposition(pd) -> str:
    """``pd r width`` header, then one bag per line (nice form: ``L:``, ``I v:``, ``F v:`` tags)."""
    lines = [f"pd {len(pd.bags)} {width(pd)}"]
    ops = getattr(pd, "ops", None)
    for i, bag in enumerate(pd.bags):
        ids = " ".join(str(v) for v in sorted(bag))
        if ops is None:
            lines.append(ids)
        else:
            tag, v = ops[i]
            head = tag if v is None else f"{tag} {v}"
            lines.append(f"{head}: {ids}".rstrip())
    return "\n".join(lines) + "\n"


def parse_decomposition(text: str):
    """Inverse of :func:`serialize_decomposition`."""
    lines = text.splitlines()
    if not lines:
        raise ParseError("empty decomposition", 1)
    head = lines[0].split()
    if len(head) != 3 or head[0] != "pd":
        raise ParseError("expected 'pd r width' header", 1)
    try:
        r = int(head[1])
    except ValueError:
        raise ParseError("bag count must be an integer", 1) from None
    body = lines[1:]
    if len(body) != r:
        raise ParseError(f"header declares {r} bags, found {len(body)}", 1)
    bags, ops = [], []
    for lineno, line in enumerate(body, start=2):
        tagged = ":" in line
        label, _, ids = line.partition(":") if tagged else ("", "", line)
        try:
            bags.append(frozenset(int(t) for t in ids.split()))
            if tagged:
                tok = label.split()
                ops.append((tok[0], None) if tok == ["L"] else (tok[0], int(tok[1])))
        except (ValueError, IndexError):
            raise ParseError(f"malformed bag line {line!r}", lineno) from None
    if ops:
        if len(ops) != len(bags):
            raise ParseError("mixed tagged and untagged bag lines", 2)
        return NicePathDecomposition(tuple(bags), tuple(ops))
    return PathDecomposition(bags)
