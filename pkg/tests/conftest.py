import random

import pytest

from indmatch.graph import Graph


def random_subcubic(n, m, rng):
    """Random graph with maximum degree at most 3 and up to m edges."""
    deg = dict.fromkeys(range(1, n + 1), 0)
    edges = set()
    attempts = 0
    while len(edges) < m and attempts < 20 * m + 20:
        attempts += 1
        u, v = rng.sample(range(1, n + 1), 2)
        if deg[u] < 3 and deg[v] < 3 and (min(u, v), max(u, v)) not in edges:
            edges.add((min(u, v), max(u, v)))
            deg[u] += 1
            deg[v] += 1
    return Graph(range(1, n + 1), edges)


@pytest.fixture
def rng():
    return random.Random(12345)
