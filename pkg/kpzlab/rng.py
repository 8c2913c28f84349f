# kpzlab/rng.py
"""Flux aléatoires reproductibles : Philox (générateur à compteur) clé = (seed, replica, stream)."""

from typing import Union

import numpy as np

# identifiants de flux : un par usage indépendant au sein d'un replica
STREAM_MAIN = 0
STREAM_REFERENCE = 1
STREAM_TARGET = 2
STREAM_REFERENCE_TARGET = 3
STREAM_NULL = 4

Seed = Union[int, np.random.Generator]


def stream(seed: int, replica: int = 0, stream_id: int = STREAM_MAIN) -> np.random.Generator:
    if seed < 0 or replica < 0 or stream_id < 0:
        raise ValueError("seed, replica et stream doivent être >= 0")
    key = np.random.SeedSequence([int(seed), int(replica), int(stream_id)]).generate_state(2, np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def as_generator(seed: Seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return stream(int(seed))


def provenance(seed: int) -> dict:
    return {
        "bit_generator": "Philox",
        "key_derivation": "SeedSequence([seed, replica, stream]).generate_state(2, uint64)",
        "seed": int(seed),
        "numpy": np.__version__,
    }
