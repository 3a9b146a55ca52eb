"""Seeded ensemble generation.

All randomness comes from numpy's PCG64 bit generator (PCG-XSL-RR 128/64)
seeded with a 64-bit unsigned integer, and only through
``Generator.random`` (uniform doubles from the top 53 bits), whose output
stream numpy keeps stable across releases. Distribution transforms are done
here rather than with ``Generator.dirichlet`` so the samples stay
reproducible byte for byte.
"""
from __future__ import annotations

import numpy as np

SEED_MAX = 2 ** 64 - 1


def make_rng(seed: int) -> np.random.Generator:
    seed = int(seed)
    if not 0 <= seed <= SEED_MAX:
        raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed}")
    return np.random.Generator(np.random.PCG64(seed))


def simplex_squares(rng: np.random.Generator, n: int) -> np.ndarray:
    """``(n, 3)`` points uniform on the 2-simplex (flat Dirichlet).

    Rows are (alpha^2, beta^2, gamma^2).
    """
    e = -np.log1p(-rng.random((n, 3)))
    return e / e.sum(axis=1, keepdims=True)


def uniform(rng: np.random.Generator, lo: float, hi: float, n: int) -> np.ndarray:
    return lo + (hi - lo) * rng.random(n)


def grid(lo: float, hi: float, n: int) -> np.ndarray:
    return np.linspace(lo, hi, n) if n > 1 else np.array([lo], dtype=float)
