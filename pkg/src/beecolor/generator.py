"""Seeded 3-colorable random instances: uniform, equi-partite, and flat families.

Every instance hides a 3-class vertex partition and only places edges
between distinct classes, so coloring each vertex by its class is always
proper.  ``hidden_classes`` replays the class draw and exposes that
witness for testing.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import Graph
from .seeds import instance_rng

FAMILIES = ("uniform", "equipartite", "flat")


@dataclass(frozen=True)
class InstanceSpec:
    n: int
    family: str
    p: float
    seed: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; expected one of {FAMILIES}")
        if self.n < 3:
            raise ValueError("instances need at least 3 vertices")
        if not 0.0 < self.p <= 1.0:
            raise ValueError("edge probability must lie in (0, 1]")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must fit in 64 bits")


def cross_pair_count(classes: np.ndarray) -> int:
    """Number of vertex pairs with distinct classes (the placeable edges)."""
    n = classes.shape[0]
    sizes = np.bincount(classes, minlength=3)
    within = int((sizes * (sizes - 1) // 2).sum())
    return n * (n - 1) // 2 - within


def flat_edge_target(spec: InstanceSpec) -> int:
    """Edge count placed by the flat family: p * cross-class pairs, rounded half up.

    Scaling by placeable pairs (rather than all pairs) keeps the three
    families on a common density scale: at the same p they share the same
    expected edge count, so the phase-transition sweep probes the same
    region for each.
    """
    return int(np.floor(spec.p * cross_pair_count(hidden_classes(spec)) + 0.5))


def hidden_classes(spec: InstanceSpec) -> np.ndarray:
    """The class assignment ``generate`` uses for the same spec (values 0..2)."""
    return _draw_classes(instance_rng(spec.family, spec.n, spec.p, spec.seed), spec)


def generate(spec: InstanceSpec) -> Graph:
    """Deterministically generate the instance described by ``spec``."""
    rng = instance_rng(spec.family, spec.n, spec.p, spec.seed)
    classes = _draw_classes(rng, spec)
    if spec.family == "flat":
        edges = _flat_edges(rng, classes, spec)
    else:
        edges = _bernoulli_edges(rng, classes, spec.p)
    return Graph.from_edges(spec.n, edges)


def _draw_classes(rng: np.random.Generator, spec: InstanceSpec) -> np.ndarray:
    # uniform: each vertex's class is an independent uniform draw.
    # equipartite/flat: a random permutation of the balanced multiset,
    # so class sizes differ by at most one.
    if spec.family == "uniform":
        return rng.integers(0, 3, spec.n)
    return rng.permutation(np.arange(spec.n) % 3)


def _bernoulli_edges(rng: np.random.Generator, classes: np.ndarray, p: float) -> list[tuple[int, int]]:
    # One uniform draw per unordered pair, in lexicographic pair order;
    # a cross-class pair becomes an edge when its draw falls below p.
    n = classes.shape[0]
    iu, iv = np.triu_indices(n, k=1)
    draws = rng.random(iu.shape[0])
    keep = (classes[iu] != classes[iv]) & (draws < p)
    return list(zip(iu[keep].tolist(), iv[keep].tolist()))


def _flat_edges(rng: np.random.Generator, classes: np.ndarray, spec: InstanceSpec) -> list[tuple[int, int]]:
    # Place exactly flat_edge_target(spec) edges, always drawing uniformly
    # among the cross-class non-edges whose endpoint degree sum is
    # currently minimal.  Greedy flattening keeps vertex degrees within a
    # narrow band, which is what makes this family "flat".
    n = spec.n
    iu, iv = np.triu_indices(n, k=1)
    cross = classes[iu] != classes[iv]
    us = iu[cross]
    vs = iv[cross]
    size = us.shape[0]
    target = int(np.floor(spec.p * size + 0.5))
    deg = np.zeros(n, dtype=np.int64)
    edges: list[tuple[int, int]] = []
    for _ in range(target):
        sums = deg[us[:size]] + deg[vs[:size]]
        ties = np.flatnonzero(sums == sums.min())
        pick = int(ties[rng.integers(ties.shape[0])])
        u, v = int(us[pick]), int(vs[pick])
        edges.append((u, v))
        deg[u] += 1
        deg[v] += 1
        size -= 1
        us[pick] = us[size]
        vs[pick] = vs[size]
    return edges
