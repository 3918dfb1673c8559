"""Deterministic 64-bit random generator (xoshiro256**).

Reports must reproduce byte-for-byte from (seed, parameters), so the
generator is pinned to a documented algorithm rather than whatever the
platform's default happens to be.  State seeding uses splitmix64; distinct
streams derive from (seed, stream) so independent searches stay
reproducible regardless of scheduling.

Reference: Blackman & Vigna, xoshiro256** 1.0 (public domain).
"""

from __future__ import annotations

import math

_MASK = (1 << 64) - 1


def _splitmix64(x: int):
    x = (x + 0x9E3779B97F4A7C15) & _MASK
    z = x
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return x, (z ^ (z >> 31)) & _MASK


def _rotl(x: int, k: int) -> int:
    return ((x << k) | (x >> (64 - k))) & _MASK


class Xoshiro256:
    """xoshiro256** stream seeded from (seed, stream) via splitmix64."""

    __slots__ = ("s",)

    def __init__(self, seed: int, stream: int = 0):
        x = (int(seed) ^ (int(stream) * 0xD1342543DE82EF95)) & _MASK
        s = []
        for _ in range(4):
            x, v = _splitmix64(x)
            s.append(v)
        if not any(s):
            s[0] = 1
        self.s = s

    def next_u64(self) -> int:
        s = self.s
        result = (_rotl((s[1] * 5) & _MASK, 7) * 9) & _MASK
        t = (s[1] << 17) & _MASK
        s[2] ^= s[0]
        s[3] ^= s[1]
        s[1] ^= s[2]
        s[0] ^= s[3]
        s[2] ^= t
        s[3] = _rotl(s[3], 45)
        return result

    def random(self) -> float:
        """Uniform double in [0, 1) with 53 significant bits."""
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def uniform(self, lo: float, hi: float) -> float:
        return lo + (hi - lo) * self.random()

    def normal(self) -> float:
        """Standard normal via Box-Muller (one value per call pair)."""
        u1 = self.random()
        while u1 <= 1e-300:
            u1 = self.random()
        u2 = self.random()
        return math.sqrt(-2.0 * math.log(u1)) * math.cos(2.0 * math.pi * u2)
