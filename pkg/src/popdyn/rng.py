"""Deterministic pseudo-random source shared by both simulation backends.

The simulator needs byte-identical random streams from the pure-Python and
the compiled kernel, so we carry our own xoshiro256** generator (seeded via
splitmix64) instead of a platform RNG whose consumption pattern we cannot
pin down. The compiled kernel implements the exact same update, bit for bit;
state is handed back and forth as a 4-word uint64 array.
"""

from __future__ import annotations

import numpy as np

_MASK64 = (1 << 64) - 1


def _splitmix64(x: int) -> tuple[int, int]:
    """One splitmix64 step: returns (new_state, output)."""
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    z = x
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return x, z ^ (z >> 31)


def _rotl(x: int, k: int) -> int:
    return ((x << k) | (x >> (64 - k))) & _MASK64


class Xoshiro256:
    """xoshiro256** with helpers for coins, geometric draws and bounded ints.

    All draw methods consume whole 64-bit outputs in a fixed pattern so that
    independent implementations of the same algorithm stay in lockstep.
    """

    __slots__ = ("s0", "s1", "s2", "s3")

    def __init__(self, seed: int):
        x = seed & _MASK64
        x, self.s0 = _splitmix64(x)
        x, self.s1 = _splitmix64(x)
        x, self.s2 = _splitmix64(x)
        x, self.s3 = _splitmix64(x)
        if self.s0 == self.s1 == self.s2 == self.s3 == 0:
            self.s0 = 1  # all-zero state is a fixed point of xoshiro

    def next_u64(self) -> int:
        result = (_rotl((self.s1 * 5) & _MASK64, 7) * 9) & _MASK64
        t = (self.s1 << 17) & _MASK64
        self.s2 ^= self.s0
        self.s3 ^= self.s1
        self.s1 ^= self.s2
        self.s0 ^= self.s3
        self.s2 ^= t
        self.s3 = _rotl(self.s3, 45)
        return result

    def coin(self) -> bool:
        """Fair coin; one 64-bit draw per flip."""
        return bool(self.next_u64() & 1)

    def random_below(self, bound: int) -> int:
        """Uniform integer in [0, bound). bound == 1 consumes no draws."""
        if bound <= 1:
            return 0
        mask = (1 << (bound - 1).bit_length()) - 1
        while True:
            r = self.next_u64() & mask
            if r < bound:
                return r

    def uniform_int(self, lo: int, hi: int) -> int:
        """Uniform integer in [lo, hi] inclusive."""
        return lo + self.random_below(hi - lo + 1)

    def geometric(self) -> int:
        """Fair-coin flips up to and including the first heads: Pr[G=j] = 2**-j."""
        j = 1
        while True:
            u = self.next_u64()
            if u == 0:
                j += 64
                continue
            return j + ((u & -u).bit_length() - 1)

    # -- state transport to/from the compiled kernel ------------------------

    def state_array(self) -> np.ndarray:
        return np.array([self.s0, self.s1, self.s2, self.s3], dtype=np.uint64)

    def set_state_array(self, arr: np.ndarray) -> None:
        self.s0, self.s1, self.s2, self.s3 = (int(w) for w in arr)

    def getstate(self) -> tuple[int, int, int, int]:
        return (self.s0, self.s1, self.s2, self.s3)

    def setstate(self, state: tuple[int, int, int, int]) -> None:
        self.s0, self.s1, self.s2, self.s3 = state
