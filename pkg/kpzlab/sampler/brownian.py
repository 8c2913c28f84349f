# kpzlab/sampler/brownian.py
"""
Fonctionnelle brownienne D_k = sup sur 0 = t_0 <= t_1 <= ... <= t_k = 1 de
sum_i [B_i(t_i) - B_i(t_{i-1})], approchée par une DLPP gaussienne k x grid_m.
"""

import math
from typing import Optional

import numpy as np

from kpzlab.errors import UsageError
from kpzlab.numerics import BROWNIAN_GRID_FACTOR
from kpzlab.rng import Seed, as_generator
from kpzlab.sampler._kernels import last_passage_corner


def default_grid(k: int) -> int:
    return BROWNIAN_GRID_FACTOR * k * k


def sample_brownian_dk(k: int, grid_m: Optional[int] = None, seed: Seed = 0) -> float:
    if k < 1:
        raise UsageError("k doit être >= 1")
    grid_m = default_grid(k) if grid_m is None else int(grid_m)
    if grid_m < k:
        raise UsageError(f"grid_m={grid_m} < k={k} : grille trop grossière")
    rng = as_generator(seed)
    # ligne i = mouvement brownien i, colonne j = incrément sur [(j-1)/m, j/m]
    increments = rng.normal(0.0, math.sqrt(1.0 / grid_m), (k, grid_m))
    return float(last_passage_corner(np.ascontiguousarray(increments)))
