"""Deterministic pseudo-random number generator used across the toolkit.

The generator is xorshift64* (Vigna 2016): a 64-bit xorshift step followed
by a multiplication with a fixed odd constant, returning the high bits.
It is small, fast, and fully specified here, so identical seeds reproduce
identical behaviour on every platform.  All randomized behaviour in the
toolkit (solver activity/phase initialization, sudoku generation) draws
from this generator and nothing else.
"""

from __future__ import annotations

_MASK64 = (1 << 64) - 1
_MULT = 0x2545F4914F6CDD1D


class XorShift64Star:
    """xorshift64* stream.  A zero seed is remapped to a fixed nonzero value."""

    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = (seed & _MASK64) or 0x9E3779B97F4A7C15

    def next_u64(self) -> int:
        x = self.state
        x ^= (x >> 12)
        x ^= (x << 25) & _MASK64
        x ^= (x >> 27)
        self.state = x
        return (x * _MULT) & _MASK64

    def next_float(self) -> float:
        """Uniform float in [0, 1) using the top 53 bits."""
        return (self.next_u64() >> 11) / float(1 << 53)

    def next_below(self, n: int) -> int:
        """Uniform integer in [0, n).  Uses rejection to avoid modulo bias."""
        if n <= 0:
            raise ValueError("n must be positive")
        limit = _MASK64 - (_MASK64 + 1) % n
        while True:
            x = self.next_u64()
            if x <= limit:
                return x % n

    def next_bool(self) -> bool:
        return bool(self.next_u64() >> 63)

    def shuffle(self, items: list) -> None:
        """In-place Fisher-Yates shuffle driven by this stream."""
        for i in range(len(items) - 1, 0, -1):
            j = self.next_below(i + 1)
            items[i], items[j] = items[j], items[i]
