"""
Seeded, scheduling-independent randomness.

Every random choice in the library is a pure function of a 64-bit seed and
a tuple of labels (trial index, arrow index, ...).  Derived seeds are hashed
with BLAKE2b; matrix entries come from a counter-based Philox stream keyed
on ``(seed, stream index)`` so entry ``k`` of a stream is fixed regardless of
which thread draws it.
"""
from __future__ import annotations

import hashlib
from typing import Tuple

import numpy as np

_MASK64 = (1 << 64) - 1


def derive_seed(seed: int, *labels) -> int:
    """Hash ``(seed, *labels)`` into a fresh 64-bit seed."""
    h = hashlib.blake2b(digest_size=8)
    h.update(str(int(seed) & _MASK64).encode("ascii"))
    for label in labels:
        h.update(b"\x1f")
        h.update(str(label).encode("utf-8"))
    return int.from_bytes(h.digest(), "little")


def stream(seed: int, index: int) -> np.random.Generator:
    """Counter-based generator for stream *index* under *seed*."""
    key = np.array([int(seed) & _MASK64, int(index) & _MASK64], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def uniform_matrix(seed: int, index: int, shape: Tuple[int, int], p: int) -> np.ndarray:
    """Entries uniform in ``[0, p)``, drawn in row-major entry order."""
    rng = stream(seed, index)
    return rng.integers(0, p, size=shape, dtype=np.int64)


def uniform_vector(seed: int, index: int, length: int, p: int) -> np.ndarray:
    rng = stream(seed, index)
    return rng.integers(0, p, size=length, dtype=np.int64)
