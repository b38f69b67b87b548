"""Seeded randomness and direction-set utilities.

Reproducibility contract: every randomized routine derives its generator as
``numpy.random.default_rng(SeedSequence([seed, crc32(stream), index]))`` — the
PCG64 generator keyed by the user seed, a CRC-32 of the stream name, and the
case index.  No wall clock or platform entropy is ever mixed in, so a report
produced for a given seed is identical across runs, platforms, and worker
counts.
"""

from __future__ import annotations

import zlib

import numpy as np

from .errors import DimensionTooLarge

SIGN_ENUMERATION_LIMIT = 20


def case_rng(seed: int, stream: str, index: int = 0) -> np.random.Generator:
    """Deterministic per-case generator; see the module contract."""
    key = zlib.crc32(stream.encode("utf-8"))
    return np.random.default_rng(np.random.SeedSequence([int(seed), key, int(index)]))


def unit_directions(rng: np.random.Generator, count: int, dimension: int) -> np.ndarray:
    """Uniform directions on the Euclidean unit sphere, one per row.

    Gaussian samples normalized to unit 2-norm; rows that collapse below
    1e-12 are replaced by the first basis vector (probability ~0 event,
    handled so the output shape is always ``(count, dimension)``).
    """
    raw = rng.standard_normal((count, dimension))
    norms = np.linalg.norm(raw, axis=1)
    bad = norms < 1e-12
    if bad.any():
        raw[bad] = 0.0
        raw[bad, 0] = 1.0
        norms[bad] = 1.0
    return raw / norms[:, None]


def sign_vectors(dimension: int) -> np.ndarray:
    """All vectors in {-1, +1}^n, shape (2^n, n), lexicographic order."""
    if dimension > SIGN_ENUMERATION_LIMIT:
        raise DimensionTooLarge(
            f"sign-vector enumeration capped at n <= {SIGN_ENUMERATION_LIMIT}, "
            f"got {dimension}"
        )
    grid = np.indices((2,) * dimension).reshape(dimension, -1).T
    return (2.0 * grid - 1.0).astype(np.float64)
