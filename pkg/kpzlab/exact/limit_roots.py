# kpzlab/exact/limit_roots.py
"""
Ensemble discret limite {s : exp(-s^2/2) = zeta} et passage des racines de
Bethe (L = 2N) à cet ensemble par s = 2 sqrt(2N) (w + 1/2).
"""

import math
from dataclasses import dataclass
from typing import List, Optional, Sequence

import numpy as np
from scipy.optimize import linear_sum_assignment

from kpzlab.errors import ToleranceError, UsageError
from kpzlab.exact.bethe import BetheRootSet, bethe_roots
from kpzlab.numerics import LIMIT_ROOT_RESIDUAL_TOL


@dataclass(frozen=True)
class LimitRootSet:
    zeta: complex
    radius: float
    roots: np.ndarray
    residuals: np.ndarray


@dataclass(frozen=True)
class RootMatching:
    pairs: List[tuple]
    distances: np.ndarray

    @property
    def max_distance(self) -> float:
        return float(self.distances.max()) if self.distances.size else 0.0


def limit_root_set(zeta: complex, R: float) -> LimitRootSet:
    """s = +-(-2 Log zeta - 4 pi i k)^{1/2}, k entier, |s| <= R (branches principales)."""
    zeta = complex(zeta)
    if not 0.0 < abs(zeta) < 1.0:
        raise UsageError(f"|zeta| doit être dans (0, 1) : |zeta|={abs(zeta)}")
    if not R > 0:
        raise UsageError("R doit être > 0")

    base = -2.0 * np.log(zeta)
    # |s|^2 = |base - 4 pi i k| <= R^2 borne |Im(base) - 4 pi k|
    k_min = int(math.floor((base.imag - R * R) / (4.0 * math.pi)))
    k_max = int(math.ceil((base.imag + R * R) / (4.0 * math.pi)))
    squares = base - 4j * math.pi * np.arange(k_min, k_max + 1)
    squares = squares[np.abs(squares) <= R * R]
    half = np.sqrt(squares)
    roots = np.concatenate([half, -half])

    order = np.lexsort((np.angle(roots), np.abs(roots)))
    roots = roots[order]
    residuals = np.abs(np.exp(-(roots**2) / 2.0) - zeta)
    # l'erreur d'arrondi de s^2 croît comme |s|^2
    bound = LIMIT_ROOT_RESIDUAL_TOL * np.maximum(1.0, np.abs(roots) ** 2 / 2.0)
    if np.any(residuals > bound):
        raise ToleranceError("résidu des racines limites au-delà de la tolérance", worst=float(residuals.max()))
    return LimitRootSet(zeta=zeta, radius=float(R), roots=roots, residuals=residuals)


def bethe_z_for_limit(N: int, zeta: complex) -> complex:
    return complex(zeta) * (-4.0) ** (-N)


def bethe_for_limit(N: int, zeta: complex) -> BetheRootSet:
    return bethe_roots(2 * N, N, bethe_z_for_limit(N, zeta))


def rescale_bethe_to_limit(rootset: BetheRootSet) -> List[complex]:
    if rootset.L != 2 * rootset.N:
        raise UsageError(f"rescaling défini pour L = 2N uniquement (L={rootset.L}, N={rootset.N})")
    scale = 2.0 * math.sqrt(2.0 * rootset.N)
    return [complex(s) for s in scale * (rootset.roots + 0.5)]


def match_root_sets(
    found: Sequence[complex],
    target: Sequence[complex],
    radius: Optional[float] = None,
) -> RootMatching:
    """Appariement un-à-un de coût minimal (distance euclidienne) ; `radius` filtre `found`."""
    a = np.asarray(found, dtype=complex)
    if radius is not None:
        a = a[np.abs(a) <= radius]
    b = np.asarray(target, dtype=complex)
    if a.size == 0 or b.size == 0:
        return RootMatching(pairs=[], distances=np.empty(0))
    cost = np.abs(a[:, None] - b[None, :])
    rows, cols = linear_sum_assignment(cost)
    pairs = [(complex(a[r]), complex(b[c])) for r, c in zip(rows, cols)]
    return RootMatching(pairs=pairs, distances=cost[rows, cols])
