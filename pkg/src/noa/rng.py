"""Seeded, keyed random streams.

Every randomized stage draws from its own stream keyed by a stage constant
plus context (repetition, column, ...) under the single user seed, so
results do not depend on loop or evaluation order.
"""

from __future__ import annotations

import numpy as np

STAGE_RELABEL3 = 1
STAGE_RELABEL2 = 2
STAGE_SHUFFLE2 = 3
STAGE_EXPAND = 4
STAGE_LHS = 5
STAGE_JITTER = 6
STAGE_BENCH = 7
STAGE_IID = 8
STAGE_OWEN = 9


def stream(seed: int, *key: int) -> np.random.Generator:
    """Independent generator for (seed, key...)."""
    return np.random.default_rng(np.random.SeedSequence([int(seed) & (2**64 - 1), *map(int, key)]))


def derive_seed(seed: int, *key: int) -> int:
    """A child seed usable as the user seed of a nested construction."""
    ss = np.random.SeedSequence([int(seed) & (2**64 - 1), *map(int, key)])
    return int(ss.generate_state(1, np.uint64)[0])
