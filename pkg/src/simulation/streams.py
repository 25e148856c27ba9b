"""
Counter-based seed splitting for reproducible per-trial random streams.

Trial ``i`` under master seed ``s`` always draws from the same stream, no
matter which worker runs it or in what order.
"""
import numpy as np

MASK64 = (1 << 64) - 1

# MurmurHash64A constants
_MULTIPLIER = 0xC6A4A7935BD1E995
_ROTATOR = 47
_LENGTH = 8

SPLIT_TRIAL = 0x5472696C
SPLIT_GRAPH = 0x47726170


def split_seed(key: int, seed: int) -> int:
    """MurmurHash64A of a single 64-bit ``key`` under ``seed``."""
    key &= MASK64
    h = (seed & MASK64) ^ (_LENGTH * _MULTIPLIER & MASK64)

    key = key * _MULTIPLIER & MASK64
    key ^= key >> _ROTATOR
    key = key * _MULTIPLIER & MASK64
    h ^= key
    h = h * _MULTIPLIER & MASK64

    h ^= h >> _ROTATOR
    h = h * _MULTIPLIER & MASK64
    h ^= h >> _ROTATOR
    return h


def trial_seed(seed: int, index: int, stream: int = SPLIT_TRIAL) -> int:
    return split_seed(index, split_seed(stream, seed))


def trial_rng(seed: int, index: int, stream: int = SPLIT_TRIAL) -> np.random.Generator:
    return np.random.default_rng(trial_seed(seed, index, stream))
