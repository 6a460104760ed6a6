"""Portable seeded random numbers.

Every random draw in the package goes through SplitMix64 so that results can
be reproduced bit-for-bit in any language with 64-bit unsigned arithmetic:

    state  <- state + 0x9E3779B97F4A7C15            (mod 2**64)
    z      <- state
    z      <- (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9  (mod 2**64)
    z      <- (z ^ (z >> 27)) * 0x94D049BB133111EB  (mod 2**64)
    output <- z ^ (z >> 31)

Uniform doubles on [0, 1) use the top 53 bits: ``(output >> 11) * 2**-53``.
Because the state advances by a constant, the k-th output depends only on
``seed + k * GAMMA`` and whole blocks can be generated with numpy.
"""

from __future__ import annotations

import numpy as np

MASK64 = (1 << 64) - 1
GAMMA = 0x9E3779B97F4A7C15
_M1 = 0xBF58476D1CE4E5B9
_M2 = 0x94D049BB133111EB


def mix64(z: int) -> int:
    """SplitMix64 output finalizer on a Python int."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * _M1) & MASK64
    z = ((z ^ (z >> 27)) * _M2) & MASK64
    return z ^ (z >> 31)


def _mix64_array(z: np.ndarray) -> np.ndarray:
    z = (z ^ (z >> np.uint64(30))) * np.uint64(_M1)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(_M2)
    return z ^ (z >> np.uint64(31))


def derive_seed(seed: int, *keys: int) -> int:
    """Deterministically combine a seed with integer keys into a new 64-bit seed."""
    s = mix64(seed & MASK64)
    for k in keys:
        s = mix64((s + GAMMA * ((k & MASK64) + 1)) & MASK64)
    return s


class SplitMix64:
    """Sequential SplitMix64 stream.

    Scalar draws use Python ints; ``uint64s``/``random`` produce the same
    sequence in vectorized form.
    """

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + GAMMA) & MASK64
        return mix64(self.state)

    def uniform(self) -> float:
        return (self.next_u64() >> 11) * 2.0**-53

    def integer(self, k: int) -> int:
        """Uniform integer in ``range(k)`` (multiply-shift, negligible bias for small k)."""
        return ((self.next_u64() >> 11) * k) >> 53

    def uint64s(self, size: int) -> np.ndarray:
        steps = np.arange(1, size + 1, dtype=np.uint64)
        states = np.uint64(self.state) + steps * np.uint64(GAMMA)
        self.state = (self.state + GAMMA * size) & MASK64
        return _mix64_array(states)

    def random(self, size: int) -> np.ndarray:
        """``size`` uniform doubles on [0, 1)."""
        return (self.uint64s(size) >> np.uint64(11)).astype(np.float64) * 2.0**-53
