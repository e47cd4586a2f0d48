"""Named graph families used by tests, benchmarks and the CLI."""

from __future__ import annotations

import itertools
import random

from .graph import Graph


def path_graph(n: int, start: int = 1) -> Graph:
    vs = range(start, start + n)
    return Graph(vs, zip(vs, vs[1:]))


def cycle_graph(n: int, start: int = 1) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    vs = list(range(start, start + n))
    return Graph(vs, zip(vs, vs[1:] + vs[:1]))


def complete_graph(n: int, start: int = 1) -> Graph:
    vs = range(start, start + n)
    return Graph(vs, itertools.combinations(vs, 2))


def star_graph(leaves: int, center: int = 1) -> Graph:
    """K_{1,leaves}; leaves are numbered after the center."""
    return Graph([center], ((center, center + i) for i in range(1, leaves + 1)))


def petersen_graph() -> Graph:
    """Petersen graph on vertices 1..10 (outer 5-cycle, inner pentagram)."""
    outer = [(i, i % 5 + 1) for i in range(1, 6)]
    spokes = [(i, i + 5) for i in range(1, 6)]
    inner = [(6 + i, 6 + (i + 2) % 5) for i in range(5)]
    return Graph(range(1, 11), outer + spokes + inner)


def complete_binary_tree(n: int) -> Graph:
    """Heap-numbered binary tree on vertices 1..n."""
    return Graph(range(1, n + 1), ((v // 2, v) for v in range(2, n + 1)))


def grid_graph(rows: int, cols: int) -> Graph:
    """rows x cols grid; vertex (r, c) gets id r * cols + c + 1."""
    vid = lambda r, c: r * cols + c + 1
    edges = []
    for r in range(rows):
        for c in range(cols):
            if c + 1 < cols:
                edges.append((vid(r, c), vid(r, c + 1)))
            if r + 1 < rows:
                edges.append((vid(r, c), vid(r + 1, c)))
    return Graph(range(1, rows * cols + 1), edges)


def disjoint_union(*graphs: Graph) -> Graph:
    """Union of graphs, relabelled consecutively from 1 in argument order."""
    vertices, edges, offset = [], [], 0
    for g in graphs:
        relabel = {v: offset + i + 1 for i, v in enumerate(g.vertices)}
        vertices.extend(relabel.values())
        edges.extend((relabel[u], relabel[v]) for u, v in g.edges())
        offset += g.n
    return Graph(vertices, edges)


def subdivide_edge(g: Graph, u: int, v: int, new: int | None = None) -> Graph:
    """Replace edge uv by the path u-new-v."""
    if not g.has_edge(u, v):
        raise ValueError(f"{u}-{v} is not an edge")
    if new is None:
        new = max(g.vertices) + 1
    edges = [e for e in g.edges() if e != (min(u, v), max(u, v))]
    return Graph(list(g.vertices) + [new], edges + [(u, new), (new, v)])


def erdos_renyi(n: int, p: float, rng: random.Random, start: int = 1) -> Graph:
    vs = range(start, start + n)
    return Graph(vs, (e for e in itertools.combinations(vs, 2) if rng.random() < p))


def all_graphs(n: int):
    """Every labelled graph on vertices 1..n (2^(n choose 2) of them)."""
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    for mask in range(1 << len(pairs)):
        yield Graph(range(1, n + 1), (pairs[i] for i in range(len(pairs)) if mask >> i & 1))
