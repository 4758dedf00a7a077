"""Seeded randomness helpers.

All randomness flows through numpy's PCG64 keyed by SeedSequence, so runs are
reproducible across platforms and streams can be split deterministically
(per trial, per attempt, per worker) without correlation.
"""

from __future__ import annotations

import numpy as np

_MASK64 = (1 << 64) - 1


def make_rng(seed: int, *stream: int) -> np.random.Generator:
    """Generator for the given seed, optionally sub-keyed by stream indices."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(
        entropy=seed & _MASK64, spawn_key=tuple(s & _MASK64 for s in stream))))


def split_seed(seed: int, *stream: int) -> int:
    """Derive an independent 64-bit child seed from (seed, stream indices)."""
    ss = np.random.SeedSequence(entropy=seed & _MASK64,
                                spawn_key=tuple(s & _MASK64 for s in stream))
    return int(ss.generate_state(1, np.uint64)[0])
