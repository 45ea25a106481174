import random

import pytest

from pebbling import Graph


def random_connected_graph(rng: random.Random, n: int) -> Graph:
    """Random connected graph on n vertices: random spanning tree plus a few
    extra edges."""
    adj = [set() for _ in range(n)]
    for i in range(1, n):
        j = rng.randrange(i)
        adj[i].add(j)
        adj[j].add(i)
    for _ in range(rng.randrange(0, n)):
        a, b = rng.randrange(n), rng.randrange(n)
        if a != b:
            adj[a].add(b)
            adj[b].add(a)
    return Graph(tuple(tuple(sorted(s)) for s in adj),
                 tuple(f"v{i}" for i in range(n)))


def random_counts(rng: random.Random, n: int, size: int) -> list[int]:
    counts = [0] * n
    for _ in range(size):
        counts[rng.randrange(n)] += 1
    return counts


@pytest.fixture
def rng():
    return random.Random(0xC0FFEE)
