from __future__ import annotations

import random

import pytest

from magicsets import datasets
from magicsets.hypergraph import Hypergraph


@pytest.fixture(scope="session")
def entries():
    return {name: datasets.load(name) for name in datasets.NAMES}


@pytest.fixture(scope="session")
def square(entries):
    return entries["square"]


@pytest.fixture(scope="session")
def pentagram(entries):
    return entries["pentagram"]


def random_proper_eulerian(rng: random.Random, max_vertices: int = 14) -> Hypergraph:
    """Random proper Eulerian hypergraph: random edges, then one closing
    edge over the odd-degree vertices (their count is even by handshake)."""
    while True:
        m = rng.randint(4, max_vertices)
        edges: set[tuple[int, ...]] = set()
        for _ in range(rng.randint(3, 9)):
            size = rng.randint(2, min(5, m))
            edge = tuple(sorted(rng.sample(range(1, m + 1), size)))
            edges.add(edge)
        deg = [0] * (m + 1)
        for e in edges:
            for v in e:
                deg[v] += 1
        odd = tuple(v for v in range(1, m + 1) if deg[v] % 2 == 1)
        if odd and odd not in edges:
            edges.add(odd)
        deg = [0] * (m + 1)
        for e in edges:
            for v in e:
                deg[v] += 1
        used = [v for v in range(1, m + 1) if deg[v] > 0]
        if len(used) < 3 or any(deg[v] % 2 for v in used):
            continue
        relabel = {v: i + 1 for i, v in enumerate(used)}
        clean = tuple(sorted(tuple(sorted(relabel[v] for v in e)) for e in edges))
        return Hypergraph(len(used), clean)
