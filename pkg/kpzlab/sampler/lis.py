# kpzlab/sampler/lis.py
"""Plus longue sous-suite croissante : permutations et processus de Poisson plan."""

from dataclasses import dataclass
from typing import List, Sequence

import numpy as np

from kpzlab.errors import UsageError
from kpzlab.rng import Seed, as_generator
from kpzlab.sampler._kernels import patience_length


@dataclass(frozen=True)
class PointCloud:
    t: float
    s: float
    xs: np.ndarray
    ys: np.ndarray

    def __len__(self) -> int:
        return int(self.xs.size)


def lis_length(perm: Sequence[int]) -> int:
    """Longueur de la plus longue sous-suite strictement croissante (patience sorting)."""
    values = np.asarray(list(perm), dtype=np.int64)
    n = values.size
    if n == 0:
        return 0
    if np.unique(values).size != n:
        raise UsageError("permutation invalide : valeurs dupliquées")
    if values.min() != 1 or values.max() != n:
        raise UsageError(f"permutation invalide : valeurs attendues dans 1..{n}")
    return int(patience_length(values.astype(float)))


def sample_poisson_points(t: float, s: float, seed: Seed = 0) -> PointCloud:
    """Poisson(ts) points uniformes dans (0, t) x (0, s)."""
    if t <= 0 or s <= 0:
        raise UsageError(f"dimensions du rectangle invalides : t={t}, s={s}")
    rng = as_generator(seed)
    count = int(rng.poisson(t * s))
    xs = rng.uniform(0.0, t, count)
    ys = rng.uniform(0.0, s, count)
    return PointCloud(t=t, s=s, xs=xs, ys=ys)


def points_to_permutation(cloud: PointCloud) -> List[int]:
    """Rang en y des points lus par x croissant ; coordonnées distinctes p.s."""
    order = np.argsort(cloud.xs, kind="stable")
    ranks = np.empty(len(cloud), dtype=np.int64)
    ranks[np.argsort(cloud.ys[order], kind="stable")] = np.arange(1, len(cloud) + 1)
    return ranks.tolist()


def sample_poisson_lis(t: float, s: float, seed: Seed = 0) -> int:
    cloud = sample_poisson_points(t, s, seed)
    if len(cloud) == 0:
        return 0
    order = np.argsort(cloud.xs, kind="stable")
    return int(patience_length(np.ascontiguousarray(cloud.ys[order])))


def sample_permutation_lis(n: int, seed: Seed = 0) -> int:
    """LIS d'une permutation uniforme de taille n."""
    if n < 1:
        raise UsageError("n doit être >= 1")
    rng = as_generator(seed)
    return int(patience_length(rng.permutation(n).astype(float) + 1.0))
