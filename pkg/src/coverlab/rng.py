"""Seeded random number generation.

All stochastic operations in the package take an explicit integer seed
and build a PCG64 generator from it. Multi-trial commands derive one
independent child stream per trial index, so per-trial results do not
depend on execution order and a parallel schedule would reproduce the
sequential one bit for bit.
"""

from __future__ import annotations

import numpy as np


def generator(seed: int) -> np.random.Generator:
    """Return the PCG64 generator for ``seed``."""
    return np.random.default_rng(np.random.SeedSequence(seed))


def trial_generator(seed: int, trial: int) -> np.random.Generator:
    """Return the generator for trial number ``trial`` under ``seed``.

    Uses a spawn key, so streams for distinct trials are independent
    and stable no matter how many trials run or in which order.
    """
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(trial,)))


def as_generator(seed) -> np.random.Generator:
    """Accept either an integer seed or an existing generator."""
    if isinstance(seed, np.random.Generator):
        return seed
    return generator(int(seed))
