"""Counter-based random stream splitting.

All randomness in the library flows from one master seed. Substreams are
addressed by up to three path indices, mapped onto disjoint blocks of a
Philox counter, so results do not depend on evaluation order and
parallel trials with distinct indices never collide.
"""

from __future__ import annotations

import numpy as np

_MAX_WORD = 1 << 64


def spawn_rng(seed: int, *path: int) -> np.random.Generator:
    """Generator for the substream addressed by (seed, *path).

    Accepts at most three path indices, each in [0, 2^64). The same
    address always yields an identical stream.
    """
    if len(path) > 3:
        raise ValueError("at most three path indices are supported")
    for p in path:
        if not 0 <= p < _MAX_WORD:
            raise ValueError(f"path index {p} out of range")
    counter = [0, 0, 0, 0]
    for i, p in enumerate(path):
        counter[i + 1] = p
    return np.random.Generator(np.random.Philox(key=seed, counter=counter))


def as_rng(seed_or_rng: int | np.random.Generator, *path: int) -> np.random.Generator:
    """Coerce an integer seed (via spawn_rng) or pass a Generator through."""
    if isinstance(seed_or_rng, np.random.Generator):
        return seed_or_rng
    return spawn_rng(int(seed_or_rng), *path)
