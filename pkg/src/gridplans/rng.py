"""Reproducible random streams.

All sampling uses numpy's Philox4x64 counter-based generator (256-bit counter,
128-bit key) seeded through ``SeedSequence``, so a given seed tuple yields the
same stream on every platform. Independent sub-streams come from extra seed
words, e.g. ``stream(seed, attempt)``.
"""

from __future__ import annotations

import numpy as np


def stream(*words: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(list(words))))


def as_generator(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    if seed is None:
        return np.random.Generator(np.random.Philox())
    if isinstance(seed, (int, np.integer)):
        return stream(int(seed))
    return stream(*seed)


class Draws:
    """Buffered uniform draws; scalar numpy calls dominate walks otherwise."""

    def __init__(self, rng: np.random.Generator, chunk: int = 512):
        self.rng = rng
        self.chunk = chunk
        self._buf = rng.random(chunk)
        self._i = 0

    def uniform(self) -> float:
        if self._i == self.chunk:
            self._buf = self.rng.random(self.chunk)
            self._i = 0
        u = self._buf[self._i]
        self._i += 1
        return float(u)

    def index(self, k: int) -> int:
        return min(int(self.uniform() * k), k - 1)
