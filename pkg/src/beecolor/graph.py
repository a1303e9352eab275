"""Undirected graphs, 3-colorings, the violation penalty, and DIMACS text I/O."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import IO, Iterable, Sequence, Union

import numpy as np

PALETTE = (1, 2, 3)


class DimacsError(ValueError):
    """Malformed DIMACS input.  ``lineno`` is 1-based; 0 means end of input."""

    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph over vertices ``0..n-1``.

    ``edges`` is canonical: each edge appears once as ``(u, v)`` with
    ``u < v``, sorted lexicographically.  Instances are immutable and safe
    to share between concurrent solver runs.  Use :meth:`from_edges` to
    build one from arbitrary edge input.
    """

    n: int
    edges: tuple[tuple[int, int], ...]
    # Derived index structures, built once in __post_init__.
    adjacency: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)
    edge_u: np.ndarray = field(init=False, repr=False, compare=False)
    edge_v: np.ndarray = field(init=False, repr=False, compare=False)
    adj_indptr: np.ndarray = field(init=False, repr=False, compare=False)
    adj_indices: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("graph needs at least one vertex")
        prev = (-1, -1)
        for u, v in self.edges:
            if not (0 <= u < v < self.n):
                raise ValueError(f"edge ({u}, {v}) is not canonical for n={self.n}")
            if (u, v) <= prev:
                raise ValueError("edges must be strictly increasing; use Graph.from_edges")
            prev = (u, v)

        m = len(self.edges)
        eu = np.fromiter((e[0] for e in self.edges), dtype=np.int32, count=m)
        ev = np.fromiter((e[1] for e in self.edges), dtype=np.int32, count=m)
        degrees = np.bincount(eu, minlength=self.n) + np.bincount(ev, minlength=self.n)
        indptr = np.zeros(self.n + 1, dtype=np.int32)
        np.cumsum(degrees, out=indptr[1:])
        # Filling in sorted edge order leaves every neighbor list ascending.
        indices = np.empty(2 * m, dtype=np.int32)
        cursor = indptr[:-1].copy()
        for u, v in self.edges:
            indices[cursor[u]] = v
            cursor[u] += 1
            indices[cursor[v]] = u
            cursor[v] += 1
        for arr in (eu, ev, indptr, indices):
            arr.flags.writeable = False
        adjacency = tuple(
            tuple(indices[indptr[v] : indptr[v + 1]].tolist()) for v in range(self.n)
        )
        object.__setattr__(self, "adjacency", adjacency)
        object.__setattr__(self, "edge_u", eu)
        object.__setattr__(self, "edge_v", ev)
        object.__setattr__(self, "adj_indptr", indptr)
        object.__setattr__(self, "adj_indices", indices)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "Graph":
        """Build a canonical graph, normalizing orientation and dropping duplicates."""
        canonical = set()
        for edge in edges:
            u, v = int(edge[0]), int(edge[1])
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            canonical.add((u, v) if u < v else (v, u))
        return cls(n=n, edges=tuple(sorted(canonical)))

    @property
    def m(self) -> int:
        return len(self.edges)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]


@dataclass(frozen=True, eq=False)
class Coloring:
    """Assignment of one color from ``{1, 2, 3}`` to every vertex."""

    colors: np.ndarray

    def __post_init__(self):
        arr = np.array(self.colors, dtype=np.int8, copy=True)
        if arr.ndim != 1 or arr.size == 0:
            raise ValueError("coloring must be a non-empty 1-d array")
        if arr.min() < 1 or arr.max() > 3:
            raise ValueError("colors must be drawn from {1, 2, 3}")
        arr.flags.writeable = False
        object.__setattr__(self, "colors", arr)

    @classmethod
    def _trusted(cls, arr: np.ndarray) -> "Coloring":
        # Fast path for decoder output that is 1..3 by construction.
        obj = object.__new__(cls)
        arr.flags.writeable = False
        object.__setattr__(obj, "colors", arr)
        return obj

    def __len__(self) -> int:
        return self.colors.size

    def __eq__(self, other) -> bool:
        if not isinstance(other, Coloring):
            return NotImplemented
        return np.array_equal(self.colors, other.colors)


ColorsLike = Union[Coloring, np.ndarray, Sequence[int]]


def penalty(g: Graph, coloring: ColorsLike) -> int:
    """Number of vertices incident to at least one monochromatic edge.

    Zero exactly when the coloring is proper; at most ``g.n``.
    """
    colors = coloring.colors if isinstance(coloring, Coloring) else np.asarray(coloring)
    if colors.ndim != 1 or colors.shape[0] != g.n:
        raise ValueError(f"coloring has length {colors.shape[0] if colors.ndim == 1 else colors.shape}, graph has {g.n} vertices")
    if g.m == 0:
        return 0
    same = colors[g.edge_u] == colors[g.edge_v]
    if not same.any():
        return 0
    violated = np.zeros(g.n, dtype=bool)
    violated[g.edge_u[same]] = True
    violated[g.edge_v[same]] = True
    return int(violated.sum())


def parse_dimacs(source: Union[str, IO[str]]) -> Graph:
    """Parse DIMACS ``.col`` text (``c`` comments, ``p edge n m``, ``e u v``).

    Vertex indices are 1-based on the wire and 0-based in the returned
    graph.  Duplicate edge lines and opposite orientations collapse to a
    single edge.
    """
    text = source.read() if hasattr(source, "read") else source
    n = None
    edges: list[tuple[int, int]] = []
    lineno = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        tokens = raw.split()
        if not tokens or tokens[0] == "c":
            continue
        kind = tokens[0]
        if kind == "p":
            if n is not None:
                raise DimacsError(lineno, "duplicate problem line")
            if len(tokens) != 4 or tokens[1] != "edge":
                raise DimacsError(lineno, "expected 'p edge <vertices> <edges>'")
            try:
                n = int(tokens[2])
                int(tokens[3])
            except ValueError:
                raise DimacsError(lineno, "problem line fields must be integers") from None
            if n < 1:
                raise DimacsError(lineno, "vertex count must be positive")
        elif kind == "e":
            if n is None:
                raise DimacsError(lineno, "edge line before problem line")
            if len(tokens) != 3:
                raise DimacsError(lineno, "expected 'e <u> <v>'")
            try:
                u, v = int(tokens[1]), int(tokens[2])
            except ValueError:
                raise DimacsError(lineno, "edge endpoints must be integers") from None
            if not (1 <= u <= n and 1 <= v <= n):
                raise DimacsError(lineno, f"vertex index out of [1, {n}]")
            if u == v:
                raise DimacsError(lineno, f"self-loop at vertex {u}")
            edges.append((u - 1, v - 1))
        else:
            raise DimacsError(lineno, f"unrecognized line type {kind!r}")
    if n is None:
        raise DimacsError(lineno, "missing problem line")
    return Graph.from_edges(n, edges)


def write_dimacs(g: Graph) -> str:
    """Canonical DIMACS text: sorted 1-based edges; round-trips via parse_dimacs."""
    lines = [f"p edge {g.n} {g.m}"]
    lines.extend(f"e {u + 1} {v + 1}" for u, v in g.edges)
    return "\n".join(lines) + "\n"
