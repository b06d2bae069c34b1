"""Seed plumbing.

Every random draw in the package flows through one numpy PCG64 generator
created from an explicit integer seed.  Nested work (successive bisections
inside one run, members inside an ensemble) never shares a stream: each
gets its own seed derived with the splitmix64 finalizer, so streams are
decorrelated but fully reproducible from the base seed alone.
"""

from __future__ import annotations

import numpy as np

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15

# recorded in solution metadata so outputs are self-describing
PRNG_NAME = "numpy-pcg64/splitmix64"


def splitmix64(z: int) -> int:
    """One splitmix64 finalizer step (Steele, Lea, Flood 2014)."""
    z &= MASK64
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9 & MASK64
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB & MASK64
    return (z ^ (z >> 31)) & MASK64


def mix_seed(base_seed: int, index: int) -> int:
    """Seed for the index-th piece of nested work under base_seed."""
    if index < 0:
        raise ValueError("index must be nonnegative")
    return splitmix64((base_seed + (index + 1) * GOLDEN_GAMMA) & MASK64)


def initial_vector(seed: int, n: int) -> np.ndarray:
    """Uniform start vector on [-0.5, 0.5) for the power iteration."""
    rng = np.random.default_rng(seed)
    return rng.random(n) - 0.5


def retry_seed(seed: int) -> int:
    """Seed for the single retry after an underflow collapse."""
    return (seed + GOLDEN_GAMMA) & MASK64
