"""Shared fixtures and independent oracles.

The oracles here are deliberately naive (explicit loops, exhaustive
enumeration) so they stay independent of the library's vectorized and
compiled paths they are used to check.
"""

from __future__ import annotations

from itertools import product

import numpy as np
import pytest

from beecolor import Graph


def naive_violations(g: Graph, colors) -> int:
    """Per-vertex scan: count vertices with at least one same-colored neighbor."""
    count = 0
    for v in range(g.n):
        for u in g.adjacency[v]:
            if colors[u] == colors[v]:
                count += 1
                break
    return count


def brute_force_min_penalty(g: Graph) -> int:
    """Exhaustive minimum of naive_violations over all 3**n colorings."""
    best = g.n + 1
    for colors in product((1, 2, 3), repeat=g.n):
        best = min(best, naive_violations(g, colors))
        if best == 0:
            return 0
    return best


def random_graph(rng: np.random.Generator, n: int, p: float) -> Graph:
    """Erdos-Renyi graph (not necessarily 3-colorable)."""
    edges = [
        (u, v)
        for u in range(n)
        for v in range(u + 1, n)
        if rng.random() < p
    ]
    return Graph.from_edges(n, edges)


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


@pytest.fixture
def k3() -> Graph:
    return complete_graph(3)


@pytest.fixture
def k4() -> Graph:
    return complete_graph(4)


@pytest.fixture
def edgeless5() -> Graph:
    return Graph.from_edges(5, [])
