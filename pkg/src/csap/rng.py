"""Deterministic pseudo-randomness for permutations and loss draws.

The generator is SplitMix64 (Steele, Lea & Flood; the public-domain
reference constants), and bounded integers come from the bitmask
rejection method, which involves no modulo and therefore no modulo bias:

    next_u64: state = (state + 0x9E3779B97F4A7C15) mod 2^64
              z = state
              z = (z xor (z >> 30)) * 0xBF58476D1CE4E5B9  mod 2^64
              z = (z xor (z >> 27)) * 0x94D049BB133111EB  mod 2^64
              return z xor (z >> 31)

    below(k): mask = 2^bitlen(k-1) - 1
              draw v = next_u64() & mask until v < k (always >= 1 draw)

Both are fixed so that shuffles are bit-reproducible across
implementations and languages; see the golden vectors in the README.
"""

MASK64 = (1 << 64) - 1
GOLDEN64 = 0x9E3779B97F4A7C15


def mix64(z: int) -> int:
    """SplitMix64 finalizer: a bijective mix on 64-bit integers.

    Used to derive domain-separated seeds (e.g. loss seeds from
    permutation seeds) without correlating the resulting streams.
    """
    z &= MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


class SplitMix64:
    """SplitMix64 stream seeded with a 64-bit integer."""

    __slots__ = ("state",)

    def __init__(self, seed: int) -> None:
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + GOLDEN64) & MASK64
        return mix64(self.state)

    def below(self, bound: int) -> int:
        """Uniform integer in [0, bound) by bitmask rejection."""
        if bound <= 0:
            raise ValueError(f"bound must be positive, got {bound}")
        mask = (1 << (bound - 1).bit_length()) - 1
        while True:
            v = self.next_u64() & mask
            if v < bound:
                return v


def shuffled_indices(seed: int, n: int) -> list[int]:
    """Fisher-Yates shuffle of range(n), highest index first.

    pi starts as the identity; for i = n-1 down to 1, j = below(i+1) and
    pi[i], pi[j] are swapped. Deterministic in (seed, n).
    """
    rng = SplitMix64(seed)
    pi = list(range(n))
    for i in range(n - 1, 0, -1):
        j = rng.below(i + 1)
        pi[i], pi[j] = pi[j], pi[i]
    return pi


def sample_without_replacement(rng: SplitMix64, population: int, k: int) -> list[int]:
    """Uniform k-subset of range(population) via a partial Fisher-Yates pass."""
    if not 0 <= k <= population:
        raise ValueError(f"k={k} outside [0, {population}]")
    items = list(range(population))
    for i in range(k):
        j = i + rng.below(population - i)
        items[i], items[j] = items[j], items[i]
    return sorted(items[:k])
