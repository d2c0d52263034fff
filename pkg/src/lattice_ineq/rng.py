"""Portable seeded pseudo-random numbers.

The generator is xorshift64* (Vigna, 2016) with shift triple (12, 25, 27) and
output multiplier 0x2545F4914F6CDD1D.  The 64-bit state is initialised from the
user seed through one splitmix64 step, so seed 0 is valid.  Doubles take the
top 53 bits of each output: ``(x >> 11) * 2**-53``, uniform on [0, 1).

Everything is plain integer arithmetic masked to 64 bits, so any language can
reproduce the same stream bit-for-bit.
"""

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15
XORSHIFT_MULTIPLIER = 0x2545F4914F6CDD1D


def splitmix64(x):
    """One splitmix64 output for input state ``x``."""
    z = (x + GOLDEN_GAMMA) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


class Xorshift64Star:
    """xorshift64* stream.  ``stream`` selects an independent substream."""

    def __init__(self, seed, stream=0):
        base = (int(seed) + int(stream) * GOLDEN_GAMMA) & MASK64
        self.state = splitmix64(base) or GOLDEN_GAMMA

    def next_u64(self):
        x = self.state
        x ^= x >> 12
        x ^= (x << 25) & MASK64
        x ^= x >> 27
        self.state = x
        return (x * XORSHIFT_MULTIPLIER) & MASK64

    def random(self):
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def uniform(self, lo, hi):
        return lo + (hi - lo) * self.random()

    def randbelow(self, m):
        # plain modulo reduction; the bias is below 2**-50 for m < 2**14
        if m <= 0:
            raise ValueError("randbelow needs a positive bound")
        return self.next_u64() % m

    def uniform_array(self, size, lo=0.0, hi=1.0):
        import numpy as np

        return np.array([self.uniform(lo, hi) for _ in range(size)], dtype=float)
