"""SplitMix64 random stream.

The same recurrence is compiled into the run kernel (see ``_kernel``); both
must consume draws in the same order so that a run can be replayed one
round at a time through the pure-Python operations.

Draw conventions, shared by both paths:

* ``next_u64``: ``state += GAMMA``; return ``mix64(state)``.
* unit uniform: top 53 bits of one ``next_u64`` times ``2**-53``, in ``[0, 1)``.
* bounded integer in ``[0, bound)``: rejection on ``r < (2**64 - bound) % bound``,
  then ``r % bound``, so the result is exactly uniform.
* shuffle: Fisher-Yates from the last index down to 1.
"""

from __future__ import annotations

from typing import MutableSequence

GAMMA = 0x9E3779B97F4A7C15
MIX1 = 0xBF58476D1CE4E5B9
MIX2 = 0x94D049BB133111EB
MASK = (1 << 64) - 1
INV_2_53 = 1.0 / (1 << 53)


def mix64(z: int) -> int:
    """SplitMix64 finalizer, a bijection on 64-bit integers."""
    z &= MASK
    z = ((z ^ (z >> 30)) * MIX1) & MASK
    z = ((z ^ (z >> 27)) * MIX2) & MASK
    return z ^ (z >> 31)


def derive_seed(seed: int, index: int) -> int:
    """Child seed number ``index`` of ``seed``.

    Equal to output ``index + 1`` of a SplitMix64 stream started at ``seed``.
    Because ``GAMMA`` is odd and ``mix64`` is a bijection, distinct indices
    always give distinct child seeds for the same parent.
    """
    if index < 0:
        raise ValueError("index must be non-negative")
    return mix64((seed + (index + 1) * GAMMA) & MASK)


class RngStream:
    def __init__(self, seed: int):
        self.state = seed & MASK

    def next_u64(self) -> int:
        self.state = (self.state + GAMMA) & MASK
        return mix64(self.state)

    def random(self) -> float:
        return (self.next_u64() >> 11) * INV_2_53

    def uniform(self, low: float, high: float) -> float:
        return low + (high - low) * self.random()

    def below(self, bound: int) -> int:
        if bound <= 0:
            raise ValueError("bound must be positive")
        threshold = ((1 << 64) - bound) % bound
        while True:
            r = self.next_u64()
            if r >= threshold:
                return r % bound

    def shuffle(self, items: MutableSequence) -> None:
        for i in range(len(items) - 1, 0, -1):
            j = self.below(i + 1)
            items[i], items[j] = items[j], items[i]
