"""Seeded random streams and the random-matrix primitives built on them.

Every trial of every suite draws from its own stream derived from
``(seed, trial_index)``, so shards can run in any order and still produce
identical reports.
"""

from __future__ import annotations

import numpy as np

from .errors import InputError

RNG_ALGORITHM = "numpy.random.PCG64 keyed by SeedSequence([seed, trial])"

_SEED_LIMIT = 2**64


def check_seed(seed: int) -> int:
    seed = int(seed)
    if not 0 <= seed < _SEED_LIMIT:
        raise InputError(f"seed must be a 64-bit unsigned integer, got {seed}")
    return seed


def trial_rng(seed: int, trial: int = 0) -> np.random.Generator:
    """Independent generator for one trial of a seeded run."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([check_seed(seed), int(trial)])))


def as_rng(rng: np.random.Generator | int | None) -> np.random.Generator:
    if isinstance(rng, np.random.Generator):
        return rng
    return trial_rng(0 if rng is None else rng)


def complex_gaussian(rng: np.random.Generator, shape) -> np.ndarray:
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2.0)


def haar_unitary(rng: np.random.Generator, n: int) -> np.ndarray:
    """Haar-distributed n x n unitary (QR of a Ginibre matrix with phase fix)."""
    q, r = np.linalg.qr(complex_gaussian(rng, (n, n)))
    d = np.diag(r)
    return q * (d / np.abs(d))


def haar_orthogonal(rng: np.random.Generator, n: int) -> np.ndarray:
    q, r = np.linalg.qr(rng.standard_normal((n, n)))
    return q * np.sign(np.diag(r))


def isometry(rng: np.random.Generator, rows: int, cols: int) -> np.ndarray:
    """rows x cols matrix with orthonormal columns (requires rows >= cols)."""
    if rows < cols:
        raise ValueError("an isometry needs at least as many rows as columns")
    return haar_unitary(rng, rows)[:, :cols]
