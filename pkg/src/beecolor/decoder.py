"""Weight-vector to 3-coloring decoding via weight-guided DSatur.

A real-valued weight per vertex steers the classic DSatur loop: the next
vertex to color is the uncolored one with the highest saturation degree
(count of distinct colors on already-colored neighbors), ties broken by
larger weight, then by smaller index.  Each vertex receives the smallest
color in {1, 2, 3} unused by its colored neighbors; when all three occur,
it takes the color with the fewest conflicting neighbors (smallest color
on ties) and the conflict is left for the penalty to count.

The mapping is deterministic and depends on weights only through their
relative order, so it is far from injective: shifting every weight by a
constant decodes identically.

``decode`` is the plain-Python reference; ``decode_fast`` runs a numba
kernel with identical semantics (falling back to the reference when numba
is unavailable) and is what the solver calls 300k times per run.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import Coloring, Graph, penalty

try:
    from numba import njit
except ImportError:  # pragma: no cover - exercised only without numba
    njit = None


@dataclass(frozen=True, eq=False)
class DecodeResult:
    coloring: Coloring
    penalty: int
    order: np.ndarray  # vertices in the sequence they were colored


def _check_weights(g: Graph, weights) -> np.ndarray:
    w = np.asarray(weights, dtype=np.float64)
    if w.ndim != 1 or w.shape[0] != g.n:
        raise ValueError(f"weight vector has shape {w.shape}, graph has {g.n} vertices")
    if not np.all(np.isfinite(w)):
        raise ValueError("weights must be finite")
    return w


def decode(g: Graph, weights) -> DecodeResult:
    """Reference decoder (pure Python)."""
    w = _check_weights(g, weights)
    n = g.n
    colors = np.zeros(n, dtype=np.int8)
    order = np.empty(n, dtype=np.int32)
    seen: list[set[int]] = [set() for _ in range(n)]
    conflicts = [[0, 0, 0] for _ in range(n)]
    uncolored = set(range(n))
    for step in range(n):
        v = max(uncolored, key=lambda x: (len(seen[x]), w[x], -x))
        if len(seen[v]) < 3:
            c = min({1, 2, 3} - seen[v])
        else:
            c = min((1, 2, 3), key=lambda k: (conflicts[v][k - 1], k))
        colors[v] = c
        order[step] = v
        uncolored.remove(v)
        for u in g.adjacency[v]:
            if colors[u] == 0:
                seen[u].add(c)
                conflicts[u][c - 1] += 1
    return DecodeResult(Coloring._trusted(colors), penalty(g, colors), order)


if njit is not None:

    _WORD_ONE = np.uint64(1)
    _WORD_ZERO = np.uint64(0)
    _WORD_FULL = np.uint64(0xFFFFFFFFFFFFFFFF)
    _SIGN_BIT = np.uint64(0x8000000000000000)
    _DEBRUIJN = np.uint64(0x03F79D71B4CB0A89)
    _CTZ_TABLE = np.zeros(64, dtype=np.int64)
    for _i in range(64):
        _CTZ_TABLE[((0x03F79D71B4CB0A89 << _i) & 0xFFFFFFFFFFFFFFFF) >> 58] = _i
    del _i

    @njit(cache=True)
    def _pref_rank(w):
        # Stable LSD radix sort of the IEEE bit patterns, transformed so
        # ascending key order means descending weight with ties broken by
        # smaller index.  Negative zero is normalized to plain zero first.
        n = w.shape[0]
        bits = w.view(np.uint64)
        keys = np.empty(n, dtype=np.uint64)
        for i in range(n):
            b = bits[i]
            if b == _SIGN_BIT:
                b = _WORD_ZERO
            if b & _SIGN_BIT == _WORD_ZERO:
                k = b ^ _SIGN_BIT
            else:
                k = b ^ _WORD_FULL
            keys[i] = k ^ _WORD_FULL
        idx = np.empty(n, dtype=np.int32)
        for i in range(n):
            idx[i] = i
        idx_alt = np.empty(n, dtype=np.int32)
        keys_alt = np.empty(n, dtype=np.uint64)
        count = np.empty(256, dtype=np.int32)
        for shift in range(0, 64, 8):
            sh = np.uint64(shift)
            for c in range(256):
                count[c] = 0
            for i in range(n):
                count[np.int64((keys[i] >> sh) & np.uint64(0xFF))] += 1
            total = 0
            for c in range(256):
                t = count[c]
                count[c] = total
                total += t
            for i in range(n):
                d = np.int64((keys[i] >> sh) & np.uint64(0xFF))
                pos = count[d]
                count[d] = pos + 1
                idx_alt[pos] = idx[i]
                keys_alt[pos] = keys[i]
            idx, idx_alt = idx_alt, idx
            keys, keys_alt = keys_alt, keys
        rank = np.empty(n, dtype=np.int32)
        for i in range(n):
            rank[idx[i]] = i
        return idx, rank

    @njit(cache=True)
    def _dsatur_kernel(indptr, indices, edge_u, edge_v, w):
        n = w.shape[0]
        # Selection preference: descending weight, ties by smaller index.
        pref, rank = _pref_rank(w)
        colors = np.zeros(n, dtype=np.int8)
        order = np.empty(n, dtype=np.int32)
        sat = np.zeros(n, dtype=np.int32)
        seen = np.zeros(n, dtype=np.uint8)  # bitmask of neighbor colors
        conflicts = np.zeros((n, 3), dtype=np.int32)
        # One bitset per saturation level 0..3, bit index = preference
        # rank.  Membership is maintained eagerly, so the next vertex to
        # color is the lowest set bit of the highest non-empty level.
        nwords = (n + 63) >> 6
        bits = np.zeros((4, nwords), dtype=np.uint64)
        for wi in range(nwords):
            bits[0, wi] = _WORD_FULL
        for pos in range(n, nwords << 6):
            bits[0, pos >> 6] &= _WORD_FULL ^ (_WORD_ONE << np.uint64(pos & 63))
        for step in range(n):
            v = -1
            for b in range(3, -1, -1):
                for wi in range(nwords):
                    word = bits[b, wi]
                    if word != _WORD_ZERO:
                        low = word & ((word ^ _WORD_FULL) + _WORD_ONE)  # lowest set bit
                        t = _CTZ_TABLE[(low * _DEBRUIJN) >> np.uint64(58)]
                        bits[b, wi] = word ^ low
                        v = pref[(wi << 6) + t]
                        break
                if v >= 0:
                    break
            mask = seen[v]
            if mask & 1 == 0:
                c = 1
            elif mask & 2 == 0:
                c = 2
            elif mask & 4 == 0:
                c = 3
            else:
                c = 1
                best = conflicts[v, 0]
                if conflicts[v, 1] < best:
                    c = 2
                    best = conflicts[v, 1]
                if conflicts[v, 2] < best:
                    c = 3
            colors[v] = c
            order[step] = v
            cbit = np.uint8(1 << (c - 1))
            for e in range(indptr[v], indptr[v + 1]):
                u = indices[e]
                if colors[u] == 0:
                    conflicts[u, c - 1] += 1
                    if seen[u] & cbit == 0:
                        seen[u] |= cbit
                        s = sat[u]
                        pos = rank[u]
                        m = _WORD_ONE << np.uint64(pos & 63)
                        bits[s, pos >> 6] &= _WORD_FULL ^ m
                        bits[s + 1, pos >> 6] |= m
                        sat[u] = s + 1
        violated = np.zeros(n, dtype=np.uint8)
        for t in range(edge_u.shape[0]):
            if colors[edge_u[t]] == colors[edge_v[t]]:
                violated[edge_u[t]] = 1
                violated[edge_v[t]] = 1
        pen = 0
        for i in range(n):
            pen += violated[i]
        return order, colors, pen


def _decode_arrays(g: Graph, weights) -> tuple[np.ndarray, np.ndarray, int]:
    """Fast decode returning bare (order, colors, penalty) arrays."""
    w = _check_weights(g, weights)
    if njit is None:
        res = decode(g, w)
        return res.order, res.coloring.colors, res.penalty
    order, colors, pen = _dsatur_kernel(g.adj_indptr, g.adj_indices, g.edge_u, g.edge_v, w)
    return order, colors, int(pen)


def decode_fast(g: Graph, weights) -> DecodeResult:
    """Same mapping as :func:`decode`, via the compiled kernel."""
    order, colors, pen = _decode_arrays(g, weights)
    return DecodeResult(Coloring._trusted(colors), pen, order)
