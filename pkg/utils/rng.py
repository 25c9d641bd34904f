"""Counter-based seed streams for deterministic, independent trials.

A stream is identified by a root seed and a path of non-negative integers,
e.g. ``(world_index, m, trial)``. ``SeedStream(root).child(w, m, t)`` always
yields the same generator, and adding trials never perturbs existing streams,
because each path is hashed independently by ``np.random.SeedSequence``.
"""

from __future__ import annotations

import zlib
from typing import Tuple

import numpy as np

# Stream purposes, mixed into the path so that different consumers of one
# (world, m, trial) coordinate never share random bits.
PURPOSE_TRAINING = 1
PURPOSE_EVALUATION = 2
PURPOSE_WORLD = 3
PURPOSE_TARGET = 4
PURPOSE_ORACLE = 5


def name_key(name: str) -> int:
    """Stable non-negative integer for a string (for use in stream paths)."""
    return zlib.crc32(name.encode('utf-8'))


class SeedStream:
    """Splittable seeded stream.

    Attributes:
        root: Root seed
        path: Counter path identifying this stream
    """

    def __init__(self, root: int, path: Tuple[int, ...] = ()) -> None:
        if root < 0:
            raise ValueError("Root seed must be non-negative")
        self.root = int(root)
        self.path = tuple(int(p) for p in path)

    def child(self, *keys: int) -> 'SeedStream':
        return SeedStream(self.root, self.path + tuple(keys))

    def seed_sequence(self) -> np.random.SeedSequence:
        return np.random.SeedSequence(entropy=self.root, spawn_key=self.path)

    def generator(self) -> np.random.Generator:
        return np.random.default_rng(self.seed_sequence())

    def derive_seed(self) -> int:
        """A 63-bit integer seed, e.g. for a world spec rebuilt inside a trial."""
        return int(self.seed_sequence().generate_state(1, dtype=np.uint64)[0] >> np.uint64(1))

    def __repr__(self) -> str:
        return f"SeedStream(root={self.root}, path={self.path})"


def as_generator(rng: 'np.random.Generator | SeedStream | int | None') -> np.random.Generator:
    """Accept a generator, a stream or a plain seed."""
    if isinstance(rng, np.random.Generator):
        return rng
    if isinstance(rng, SeedStream):
        return rng.generator()
    return np.random.default_rng(rng)


def as_seed(rng: 'np.random.Generator | SeedStream | int | None') -> int:
    """A recordable integer seed for rng.

    Generators cannot be serialized, so one seed is drawn from them. Callers
    that record the seed must build their generator with as_generator(seed).
    """
    if isinstance(rng, np.random.Generator):
        return int(rng.integers(0, 2 ** 63))
    if isinstance(rng, SeedStream):
        return rng.derive_seed()
    if rng is None:
        return 0
    if int(rng) < 0:
        raise ValueError("Seeds must be non-negative")
    return int(rng)
