"""Pinned pseudo-random generator for reproducible fuzz corpora.

The generator is xorshift64* (Vigna, 2016), seeded through one round of
splitmix64 so that small and zero seeds still give a well-mixed state.
All arithmetic is modulo 2**64.

splitmix64 (seeding)::

    z = seed + 0x9E3779B97F4A7C15
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB
    state = z ^ (z >> 31)          # replaced by 1 if it comes out 0

xorshift64* (each draw)::

    x ^= x >> 12
    x ^= x << 25
    x ^= x >> 27
    output = x * 0x2545F4914F6CDD1D

``below(n)`` draws uniformly from ``0..n-1`` by rejecting outputs
``>= 2**64 - (2**64 mod n)`` and reducing the rest modulo ``n``.
"""

MASK64 = (1 << 64) - 1

GOLDEN_GAMMA = 0x9E3779B97F4A7C15
SPLITMIX_MUL1 = 0xBF58476D1CE4E5B9
SPLITMIX_MUL2 = 0x94D049BB133111EB
XORSHIFT_MUL = 0x2545F4914F6CDD1D


def splitmix64(seed: int) -> int:
    z = (seed + GOLDEN_GAMMA) & MASK64
    z = ((z ^ (z >> 30)) * SPLITMIX_MUL1) & MASK64
    z = ((z ^ (z >> 27)) * SPLITMIX_MUL2) & MASK64
    return z ^ (z >> 31)


class XorShift64Star:
    def __init__(self, seed: int):
        if not 0 <= seed <= MASK64:
            raise ValueError("seed must be an unsigned 64-bit integer")
        self.state = splitmix64(seed) or 1

    def next_u64(self) -> int:
        x = self.state
        x ^= x >> 12
        x ^= (x << 25) & MASK64
        x ^= x >> 27
        self.state = x
        return (x * XORSHIFT_MUL) & MASK64

    def below(self, n: int) -> int:
        if n <= 0:
            raise ValueError("n must be positive")
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            r = self.next_u64()
            if r < limit:
                return r % n

    def coin(self) -> bool:
        return bool(self.next_u64() >> 63)

    def sample(self, population: list, k: int) -> list:
        """First ``k`` positions of a Fisher-Yates shuffle, in draw order."""
        pool = list(population)
        for i in range(k):
            j = i + self.below(len(pool) - i)
            pool[i], pool[j] = pool[j], pool[i]
        return pool[:k]
