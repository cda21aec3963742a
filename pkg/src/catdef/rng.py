"""Deterministic seeded RNG for fuzz tasks.

splitmix64 exactly as published (Steele-Lea-Flood): witnesses found under a
seed reproduce across platforms and implementations.  The derived helpers
below are pinned too: ``randrange(n)`` is rejection-free multiply-shift on
the top 64 bits, ``shuffle`` is Fisher-Yates from the top index down.
"""

MASK = (1 << 64) - 1


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & MASK

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK
        return z ^ (z >> 31)

    def randrange(self, n: int) -> int:
        if n <= 0:
            raise ValueError("randrange needs n >= 1")
        return (self.next_u64() * n) >> 64

    def choice(self, seq):
        if not seq:
            raise ValueError("choice on empty sequence")
        return seq[self.randrange(len(seq))]

    def shuffle(self, items: list) -> list:
        for i in range(len(items) - 1, 0, -1):
            j = self.randrange(i + 1)
            items[i], items[j] = items[j], items[i]
        return items

    def fork(self) -> "SplitMix64":
        return SplitMix64(self.next_u64())
