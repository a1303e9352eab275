"""Deterministic seed derivation.

Every random stream in the library flows from numpy's ``SeedSequence``
(PCG64 underneath), keyed by a small tuple of integers.  Two fixed stream
tags keep instance generation and solver runs statistically independent
even when the same user-facing seed shows up in both:

* instance streams: ``(INSTANCE_STREAM, family_code, n, round(p * 1e9), seed)``
* per-run solver seeds: ``(RUN_STREAM, instance_seed, run_index)``

The run seed deliberately ignores the scout variant, so the random and
rwde variants of the same (instance, run) start from identical
trajectories and only diverge at their first scout event.
"""

from __future__ import annotations

import numpy as np

INSTANCE_STREAM = 0x6265655F67656E  # "bee_gen"
RUN_STREAM = 0x6265655F72756E  # "bee_run"

FAMILY_CODES = {"uniform": 0, "equipartite": 1, "flat": 2}


def instance_rng(family: str, n: int, p: float, seed: int) -> np.random.Generator:
    """Random stream for one instance spec."""
    entropy = [INSTANCE_STREAM, FAMILY_CODES[family], n, int(round(p * 1e9)), seed]
    return np.random.default_rng(np.random.SeedSequence(entropy))


def run_seed(instance_seed: int, run_index: int) -> int:
    """64-bit solver seed for one (instance, run) pair, shared by both variants."""
    ss = np.random.SeedSequence([RUN_STREAM, instance_seed, run_index])
    return int(ss.generate_state(1, np.uint64)[0])
