"""Seed derivation for reproducible, order-independent Monte Carlo.

Every stream is a PCG64 generator seeded through ``numpy.random.SeedSequence``
with entropy ``(seed, *keys)``, e.g. ``(seed, chunk_index)`` for one chunk of
a BER run or ``(seed, point_index)`` for one point of a curve. Streams depend
only on those integers, never on scheduling, so results do not change with
the number of workers.
"""

from __future__ import annotations

import numpy as np

MASK64 = (1 << 64) - 1


def make_rng(seed: int, *keys: int) -> np.random.Generator:
    entropy = [int(seed) & MASK64, *(int(k) & MASK64 for k in keys)]
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(entropy)))


def derive_seed(seed: int, *keys: int) -> int:
    """A child 64-bit seed for ``keys`` under ``seed``."""
    entropy = [int(seed) & MASK64, *(int(k) & MASK64 for k in keys)]
    state = np.random.SeedSequence(entropy).generate_state(2, dtype=np.uint32)
    return int(state[0]) | (int(state[1]) << 32)
