# kpzlab/sampler/wishart.py
"""Matrice de Wishart complexe W = X X*, X de taille n x m, E|X_ij|^2 = 1."""

import math

import numpy as np
from scipy import linalg

from kpzlab.errors import UsageError
from kpzlab.rng import Seed, as_generator


def _check_shape(n: int, m: int) -> None:
    if n < 1:
        raise UsageError("n doit être >= 1")
    if m < n:
        raise UsageError(f"m={m} < n={n} : transposer la matrice")


def wishart_matrix(n: int, m: int, seed: Seed = 0) -> np.ndarray:
    _check_shape(n, m)
    rng = as_generator(seed)
    scale = math.sqrt(0.5)
    x = rng.normal(0.0, scale, (n, m)) + 1j * rng.normal(0.0, scale, (n, m))
    return x @ x.conj().T


def wishart_eigenvalues(n: int, m: int, seed: Seed = 0) -> np.ndarray:
    """Valeurs propres croissantes de W (hermitienne, semi-définie positive)."""
    return linalg.eigvalsh(wishart_matrix(n, m, seed))


def sample_wishart_lmax(n: int, m: int, seed: Seed = 0) -> float:
    return float(wishart_eigenvalues(n, m, seed)[-1])
