"""Exact discrete sampling on top of a 64-bit-seeded bit generator.

All branch probabilities in the samplers are ratios of big integers;
selection draws fixed-width bit blocks and compares against exact integer
thresholds, so no floating-point rounding can bias a choice.
"""

from __future__ import annotations

import random
from typing import Sequence

from .errors import ValidationError

_MASK64 = 0xFFFFFFFFFFFFFFFF


class ExactRandom:
    """Deterministic bit source with unbiased big-integer range draws."""

    def __init__(self, seed: int):
        self._rng = random.Random(seed & _MASK64)

    def randbelow(self, n: int) -> int:
        """Uniform integer in [0, n), by fixed-width draws with rejection."""
        if n <= 0:
            raise ValidationError("randbelow needs a positive bound")
        if n == 1:
            return 0
        width = (((n - 1).bit_length() + 63) // 64) * 64
        space = 1 << width
        bound = space - space % n
        while True:
            x = self._rng.getrandbits(width)
            if x < bound:
                return x % n

    def choose_weighted(self, weights: Sequence[int]) -> int:
        """Index drawn proportionally to nonnegative integer weights."""
        total = 0
        for w in weights:
            if w < 0:
                raise ValidationError("negative sampling weight")
            total += w
        if total == 0:
            raise ValidationError("all sampling weights vanish")
        r = self.randbelow(total)
        acc = 0
        for i, w in enumerate(weights):
            acc += w
            if r < acc:
                return i
        raise AssertionError("unreachable")


def derived_stream(seed: int, index: int) -> ExactRandom:
    """Per-trial stream: scramble (seed, index) into a fresh 64-bit seed."""
    x = (seed ^ (index * 0x9E3779B97F4A7C15)) & _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return ExactRandom(x ^ (x >> 31))
