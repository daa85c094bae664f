"""Small deterministic generator so fixtures are reproducible without
depending on the host language's RNG.

Multiplicative congruential generator modulo 2**64 with multiplier
0xD1342543DE82EF95 (Steele & Vigna, "Computationally easy, spectrally good
multipliers for congruential pseudorandom number generators", 2021).  The
state is kept odd; outputs are the high 32 bits of the state.

    state_0   = (2 * seed + 1) mod 2**64, then 4 warm-up steps
    state_i+1 = state_i * 0xD1342543DE82EF95 mod 2**64
    u32       = state >> 32
    below(m)  = (u32 * m) >> 32
"""

from __future__ import annotations

MULTIPLIER = 0xD1342543DE82EF95
MASK = (1 << 64) - 1


class Mcg64:
    def __init__(self, seed: int) -> None:
        self.state = ((seed << 1) | 1) & MASK
        for _ in range(4):
            self.next_u32()

    def next_u32(self) -> int:
        self.state = (self.state * MULTIPLIER) & MASK
        return self.state >> 32

    def below(self, m: int) -> int:
        """Integer in ``[0, m)``."""
        if m <= 0:
            raise ValueError("bound must be positive")
        return (self.next_u32() * m) >> 32

    def between(self, lo: int, hi: int) -> int:
        """Integer in ``[lo, hi]``."""
        return lo + self.below(hi - lo + 1)

    def shuffle(self, items: list) -> None:
        for i in range(len(items) - 1, 0, -1):
            j = self.below(i + 1)
            items[i], items[j] = items[j], items[i]
