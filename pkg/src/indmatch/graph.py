"""Simple undirected graphs with stable integer vertex ids.

Graphs are immutable: every "mutation" (vertex deletion, induced subgraph)
builds a new graph and keeps the surviving vertex ids unchanged, so that
vertex names stay meaningful across a whole branching search.

Two text formats are understood:

* edge list: one ``u v`` pair per line, ``#`` comments, a single id on a
  line declares an (isolated) vertex, and an optional first line ``n m``;
* DIMACS: ``c`` comments, a ``p edge n m`` header and ``e u v`` lines,
  vertices numbered ``1..n``.
"""

from __future__ import annotations

from collections import Counter
from typing import Iterable

from .errors import DomainError, ParseError, ValidationError

Edge = tuple[int, int]


class Graph:
    """Simple undirected graph; neighbor lists are kept sorted."""

    __slots__ = ("_vertices", "_adj", "_sorted", "_hash")

    def __init__(self, vertices: Iterable[int] = (), edges: Iterable[Edge] = ()):
        adj: dict[int, set[int]] = {int(v): set() for v in vertices}
        for u, v in edges:
            if u == v:
                raise ValidationError(f"self-loop on vertex {u}")
            adj.setdefault(u, set()).add(v)
            adj.setdefault(v, set()).add(u)
        self._vertices = tuple(sorted(adj))
        self._adj = {v: frozenset(adj[v]) for v in self._vertices}
        self._sorted: dict[int, tuple[int, ...]] = {}
        self._hash = None

    @classmethod
    def _from_adjacency(cls, adj: dict[int, frozenset]) -> "Graph":
        # trusted constructor: adj must already be symmetric
        g = cls.__new__(cls)
        g._vertices = tuple(sorted(adj))
        g._adj = adj
        g._sorted = {}
        g._hash = None
        return g

    # -- basic queries -----------------------------------------------------

    @property
    def vertices(self) -> tuple[int, ...]:
        return self._vertices

    def __len__(self) -> int:
        return len(self._vertices)

    def __contains__(self, v) -> bool:
        return v in self._adj

    def __iter__(self):
        return iter(self._vertices)

    @property
    def n(self) -> int:
        return len(self._vertices)

    @property
    def m(self) -> int:
        return sum(len(a) for a in self._adj.values()) // 2

    def edges(self) -> list[Edge]:
        """All edges as ``(u, v)`` with ``u < v``, sorted."""
        return [(u, v) for u in self._vertices for v in self.neighbors(u) if u < v]

    def neighbors(self, v: int) -> tuple[int, ...]:
        nb = self._sorted.get(v)
        if nb is None:
            nb = self._sorted[v] = tuple(sorted(self._adj[v]))
        return nb

    def neighbor_set(self, v: int) -> frozenset:
        return self._adj[v]

    def closed_neighborhood(self, v: int) -> frozenset:
        return self._adj[v] | {v}

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def max_degree(self) -> int:
        return max((len(a) for a in self._adj.values()), default=0)

    def has_edge(self, u: int, v: int) -> bool:
        return u in self._adj and v in self._adj[u]

    # -- derived graphs ----------------------------------------------------

    def delete_vertices(self, s: Iterable[int]) -> "Graph":
        s = frozenset(s)
        if not s:
            return self
        missing = s - self._adj.keys()
        if missing:
            raise DomainError(f"vertices not in graph: {sorted(missing)}")
        adj = {v: (a - s if a & s else a) for v, a in self._adj.items() if v not in s}
        return Graph._from_adjacency(adj)

    def subgraph(self, keep: Iterable[int]) -> "Graph":
        """Induced subgraph on ``keep``."""
        keep = frozenset(keep)
        missing = keep - self._adj.keys()
        if missing:
            raise DomainError(f"vertices not in graph: {sorted(missing)}")
        return Graph._from_adjacency({v: self._adj[v] & keep for v in keep})

    def components(self) -> list[tuple[int, ...]]:
        """Connected components as sorted vertex tuples, ordered by smallest id."""
        seen: set[int] = set()
        comps = []
        for root in self._vertices:
            if root in seen:
                continue
            seen.add(root)
            stack, comp = [root], [root]
            while stack:
                for w in self._adj[stack.pop()]:
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
                        comp.append(w)
            comps.append(tuple(sorted(comp)))
        return comps

    # -- identity ----------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._adj == other._adj

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._vertices, tuple(self.edges())))
        return self._hash

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def delete_vertices(g: Graph, s: Iterable[int]) -> Graph:
    """Return ``g`` minus the vertex set ``s`` (ids are not renumbered)."""
    return g.delete_vertices(s)


def degree_profile(g: Graph) -> dict[int, int]:
    """Map each occurring degree to the number of vertices having it."""
    return dict(sorted(Counter(g.degree(v) for v in g.vertices).items()))


# -- text formats ------------------------------------------------------------


def _ints(tokens, lineno):
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise ParseError(f"expected integers, got {' '.join(tokens)!r}", lineno) from None


def _check_id(v, lineno):
    if v < 0:
        raise ParseError(f"negative vertex id {v}", lineno)


def _parse_dimacs(lines) -> Graph:
    n = None
    declared_m = None
    edges = []
    for lineno, line in lines:
        tok = line.split()
        if tok[0] == "c":
            continue
        if tok[0] == "p":
            if n is not None:
                raise ParseError("duplicate problem line", lineno)
            if len(tok) != 4 or tok[1] not in ("edge", "col"):
                raise ParseError("expected 'p edge n m'", lineno)
            n, declared_m = _ints(tok[2:], lineno)
            if n < 0 or declared_m < 0:
                raise ParseError("negative size in problem line", lineno)
        elif tok[0] == "e":
            if len(tok) != 3:
                raise ParseError("expected 'e u v'", lineno)
            u, v = _ints(tok[1:], lineno)
            if u == v:
                raise ValidationError(f"self-loop on vertex {u}", lineno)
            for x in (u, v):
                if x < 1 or (n is not None and x > n):
                    raise ParseError(f"vertex {x} outside 1..{n}", lineno)
            edges.append((u, v))
        else:
            raise ParseError(f"unknown line type {tok[0]!r}", lineno)
    vertices = range(1, n + 1) if n is not None else ()
    return Graph(vertices, edges)


def _parse_edge_list(lines) -> Graph:
    rows = []
    for lineno, line in lines:
        tok = line.split()
        if len(tok) > 2:
            raise ParseError("expected 'u v' or a single vertex id", lineno)
        rows.append((lineno, _ints(tok, lineno)))

    vertices: set[int] = set()
    # a leading "n m" line is a header only when it is consistent with the body:
    # exactly m edge lines follow and every id fits 1..n (or 0..n-1)
    if rows and len(rows[0][1]) == 2:
        n, m = rows[0][1]
        body = rows[1:]
        ids = {x for _, r in body for x in r}
        if n >= 0 and sum(len(r) == 2 for _, r in body) == m:
            if all(1 <= x <= n for x in ids):
                vertices.update(range(1, n + 1))
                rows = body
            elif all(0 <= x < n for x in ids):
                vertices.update(range(n))
                rows = body

    edges = []
    for lineno, r in rows:
        for x in r:
            _check_id(x, lineno)
        if len(r) == 1:
            vertices.add(r[0])
        else:
            u, v = r
            if u == v:
                raise ValidationError(f"self-loop on vertex {u}", lineno)
            edges.append((u, v))
    return Graph(vertices, edges)


def parse_graph(text: str, fmt: str = "auto") -> Graph:
    """Parse edge-list or DIMACS text into a :class:`Graph`.

    ``fmt`` is ``"edgelist"``, ``"dimacs"`` or ``"auto"`` (DIMACS when any
    line starts with ``p``, ``e`` or ``c``). Repeated edges are merged.

    Raises:
        ParseError: malformed line (message carries the line number).
        ValidationError: a self-loop.
    """
    lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append((lineno, line))
    if fmt == "auto":
        fmt = "dimacs" if any(l.split()[0] in ("p", "e", "c") for _, l in lines) else "edgelist"
    if fmt == "dimacs":
        return _parse_dimacs(lines)
    if fmt == "edgelist":
        return _parse_edge_list(lines)
    raise ValueError(f"unknown graph format {fmt!r}")


def serialize_graph(g: Graph) -> str:
    """Canonical edge-list text: isolated vertices first, then sorted edges.

    The size line is written as a comment so the output never depends on the
    header heuristics of :func:`parse_graph`.
    """
    out = [f"# {g.n} {g.m}"]
    out.extend(str(v) for v in g.vertices if g.degree(v) == 0)
    out.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(out) + "\n"


def read_graph(path, fmt: str = "auto") -> Graph:
    with open(path) as fh:
        return parse_graph(fh.read(), fmt)
