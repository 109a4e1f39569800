"""Deterministic seed derivation.

Child seeds are derived as ``blake2b-64(repr((seed, *path)))`` so that any
trial can be replayed from the parent seed and its index alone.
"""

from __future__ import annotations

import hashlib
import random

DEFAULT_SEED = 2016
SEED_MIXING = "blake2b-64(repr((seed, *path)))"
MAX_RETRIES = 32


def derive_seed(seed: int, *path) -> int:
    digest = hashlib.blake2b(repr((int(seed),) + path).encode(), digest_size=8).digest()
    return int.from_bytes(digest, "big")


def rng_for(seed: int, *path) -> random.Random:
    return random.Random(derive_seed(seed, *path))
