"""Deterministic 64-bit random stream used by every generator in the package.

The whole toolkit draws from SplitMix64 so that a seed produces bit-identical
structures on every platform, every run, and through both kernel backends
(the compiled core carries a byte-for-byte copy of this logic in C).

Seed derivation for bulk work is ``derive_seed(master, index) =
mix64(master XOR mix64(index))``: each maze gets an independent stream, so
generation order and parallelism cannot change the output.
"""

from __future__ import annotations

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


def mix64(value: int) -> int:
    """SplitMix64 finalizer: one well-mixed word from a 64-bit input."""
    z = (value + _GOLDEN) & _MASK64
    z = ((z ^ (z >> 30)) * _MIX1) & _MASK64
    z = ((z ^ (z >> 27)) * _MIX2) & _MASK64
    return z ^ (z >> 31)


def derive_seed(master_seed: int, index: int) -> int:
    """Independent per-item seed for bulk generation under one master seed."""
    return mix64((master_seed & _MASK64) ^ mix64(index & _MASK64))


class RandomStream:
    """SplitMix64 sequence with unbiased bounded draws and Fisher-Yates shuffle."""

    __slots__ = ("_state",)

    def __init__(self, seed: int):
        self._state = seed & _MASK64

    def next_u64(self) -> int:
        self._state = (self._state + _GOLDEN) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * _MIX1) & _MASK64
        z = ((z ^ (z >> 27)) * _MIX2) & _MASK64
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        """Uniform integer in [0, n), bias-free via rejection sampling."""
        if n <= 0:
            raise ValueError("bound must be positive")
        if n == 1:
            return 0
        rem = (1 << 64) % n
        if rem == 0:
            return self.next_u64() % n
        limit = (1 << 64) - rem
        while True:
            u = self.next_u64()
            if u < limit:
                return u % n

    def shuffle(self, items: list) -> None:
        for i in range(len(items) - 1, 0, -1):
            j = self.below(i + 1)
            items[i], items[j] = items[j], items[i]

    def choice(self, items):
        if not items:
            raise ValueError("cannot choose from an empty sequence")
        return items[self.below(len(items))]
