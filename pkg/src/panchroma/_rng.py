"""Deterministic seed derivation shared by every randomized routine."""

MASK64 = (1 << 64) - 1


def splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & MASK64
    return x ^ (x >> 31)


def derive_seed(seed: int, index: int) -> int:
    """Per-trial / per-attempt seed: splitmix64(seed XOR index)."""
    return splitmix64((int(seed) ^ int(index)) & MASK64)
