"""Seeded random number generation with derivable substreams.

``Rng`` is a thin subclass of :class:`random.Random` (Mersenne Twister).
Integer seeding of ``random.Random`` is platform independent, so equal
seeds give equal streams everywhere.  Child streams are keyed by a
SplitMix64 hash of ``(seed, child_index)``, which makes per-trial streams
independent of the order in which trials are scheduled.
"""

import random

MASK64 = (1 << 64) - 1


def splitmix64(x: int) -> int:
    """One SplitMix64 output step for state ``x`` (64-bit)."""
    x = (x + 0x9E3779B97F4A7C15) & MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & MASK64
    return x ^ (x >> 31)


class Rng(random.Random):
    """Deterministic generator carrying its own 64-bit seed.

    >>> Rng(7).derive(3).seed_value == Rng(7).derive(3).seed_value
    True
    """

    def __init__(self, seed: int = 0):
        self.seed_value = seed & MASK64
        super().__init__(self.seed_value)

    def derive(self, child_index: int) -> "Rng":
        """Return the independent substream number ``child_index``.

        Derivation depends only on the seed this generator was built
        with, never on how much of its own stream has been consumed.
        """
        if child_index < 0:
            raise ValueError("child_index must be non-negative")
        return Rng(splitmix64(self.seed_value ^ splitmix64(child_index & MASK64)))

    def __repr__(self) -> str:
        return f"Rng({self.seed_value:#x})"
