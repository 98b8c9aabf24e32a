"""Deterministic, splittable random streams.

Every stochastic routine in the package draws from a generator produced by
``substream(seed, *path)``.  The stream depends only on the seed and the
integer path, never on call order or thread scheduling, so results are
reproducible under any degree of parallelism.
"""

from __future__ import annotations

import numpy as np

# Domain tags keep unrelated consumers of the same user seed on disjoint
# streams.
PERMUTATION = 1
SCENARIO = 2
GROUP_PAIR = 3
POWER_REP = 4


def _normalize(seed: int) -> int:
    return int(seed) % (1 << 64)


def substream(seed: int, *path: int) -> np.random.Generator:
    """Return a generator for the stream identified by ``(seed, *path)``."""
    key = tuple(int(p) % (1 << 32) for p in path)
    return np.random.default_rng(np.random.SeedSequence(_normalize(seed), spawn_key=key))


def derive_seed(seed: int, *path: int) -> int:
    """Fold ``(seed, *path)`` into a fresh 64-bit seed."""
    key = tuple(int(p) % (1 << 32) for p in path)
    ss = np.random.SeedSequence(_normalize(seed), spawn_key=key)
    return int(ss.generate_state(1, np.uint64)[0])
