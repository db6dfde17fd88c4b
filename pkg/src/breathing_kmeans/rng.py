"""Deterministic seed derivation for independent random streams."""

from __future__ import annotations

import hashlib

import numpy as np

MASK64 = (1 << 64) - 1


def derive_seed(base_seed: int, *keys: int | str) -> int:
    """Derive a 64-bit child seed from ``base_seed`` and a path of keys.

    The mix is the first 8 bytes (big endian) of SHA-256 over the colon-joined
    decimal/text representation, e.g. ``"42:bench:3:17"``. Any run can be
    re-executed in isolation from its recorded child seed.
    """
    text = ":".join(str(part) for part in (int(base_seed) & MASK64, *keys))
    digest = hashlib.sha256(text.encode("ascii")).digest()
    return int.from_bytes(digest[:8], "big", signed=False)


def make_rng(seed: int | np.random.Generator | None) -> np.random.Generator:
    """Pass generators through; build a PCG64 generator from an integer seed."""
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)
