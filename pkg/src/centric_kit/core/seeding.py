"""Seed derivation for reproducible parallel work.

Every parallel section derives its per-task generators from the master seed by
position, so the numbers a task draws do not depend on which worker runs it.
"""

from typing import List

import numpy as np

_SEED_MASK = (1 << 64) - 1


def seed_sequence(seed: int, *path: int) -> np.random.SeedSequence:
    """SeedSequence for ``seed`` (any 64-bit signed or unsigned value) at ``path``."""
    return np.random.SeedSequence(seed & _SEED_MASK, spawn_key=tuple(path))


def make_rng(seed: int, *path: int) -> np.random.Generator:
    """Generator for task ``path`` under the master ``seed``."""
    return np.random.default_rng(seed_sequence(seed, *path))


def spawn_rngs(seed: int, count: int) -> List[np.random.Generator]:
    """``count`` independent generators, one per task index."""
    return [make_rng(seed, i) for i in range(count)]


def derive_seed(seed: int, *path: int) -> int:
    """Integer seed for task ``path``, for APIs that take a seed rather than a generator."""
    state = seed_sequence(seed, *path).generate_state(2, dtype=np.uint32)
    return int(state[0]) | (int(state[1]) << 32)
