# kpzlab/limits/tracy_widom.py
"""
Loi de Tracy-Widom (GUE).

- tracy_widom_cdf : déterminant de Fredholm det(I - K_Airy) sur (x, inf),
  discrétisation de Nyström (Gauss-Legendre envoyé sur la demi-droite).
- CdfTable / TracyWidom : table tabulée + interpolation monotone (PCHIP),
  utilisée par toutes les comparaisons KS.
"""

import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.integrate import simpson
from scipy.interpolate import PchipInterpolator

from kpzlab.errors import ToleranceError, UsageError
from kpzlab.limits.airy import airy_array
from kpzlab.limits.painleve import hastings_mcleod
from kpzlab.numerics import (
    TW_DEFAULT_GRID,
    TW_MAP_SCALE,
    TW_NYSTROM_MAX_ORDER,
    TW_NYSTROM_ORDER,
    TW_NYSTROM_TOL,
    TW_RANGE,
    TW_TABLE_STEP,
)
from kpzlab.rng import Seed, as_generator

logger = logging.getLogger(__name__)


# ---------------------------
# Nyström
# ---------------------------

@lru_cache(maxsize=16)
def _legendre(order: int):
    return leggauss(order)


def _airy_kernel_matrix(x: float, order: int) -> np.ndarray:
    u, wu = _legendre(order)
    angle = math.pi * (u + 1.0) / 4.0
    nodes = x + TW_MAP_SCALE * np.tan(angle)
    weights = wu * TW_MAP_SCALE * (math.pi / 4.0) / np.cos(angle) ** 2

    ai, aip = airy_array(nodes)
    diff = nodes[:, None] - nodes[None, :]
    np.fill_diagonal(diff, 1.0)
    kernel = (ai[:, None] * aip[None, :] - aip[:, None] * ai[None, :]) / diff
    np.fill_diagonal(kernel, aip**2 - nodes * ai**2)
    root = np.sqrt(weights)
    return root[:, None] * kernel * root[None, :]


def fredholm_det(x: float, order: int) -> float:
    k = _airy_kernel_matrix(x, order)
    return float(np.linalg.det(np.eye(order) - k))


def tracy_widom_cdf(x: float) -> float:
    lo, hi = TW_RANGE
    x = float(x)
    if not lo <= x <= hi:
        raise UsageError(f"x={x} hors de [{lo}, {hi}]")
    order = TW_NYSTROM_ORDER
    value = fredholm_det(x, order)
    while order < TW_NYSTROM_MAX_ORDER:
        order *= 2
        refined = fredholm_det(x, order)
        if abs(refined - value) < TW_NYSTROM_TOL:
            return min(1.0, max(0.0, refined))
        value = refined
    raise ToleranceError("Nyström non convergé", x=x, nodes=order)


# ---------------------------
# Tables
# ---------------------------

@dataclass(frozen=True)
class CdfTable:
    grid: np.ndarray
    values: np.ndarray
    method: str
    tolerance: float

    def __post_init__(self):
        if self.grid.shape != self.values.shape or self.grid.size < 2:
            raise UsageError("grille et valeurs incompatibles")
        if np.any(np.diff(self.grid) <= 0):
            raise UsageError("la grille doit être strictement croissante")
        if np.any(np.diff(self.values) < -self.tolerance):
            raise ToleranceError("table de répartition non monotone", method=self.method)

    def to_records(self):
        return [
            {"x": float(x), "F": float(f), "method": self.method, "tolerance": self.tolerance}
            for x, f in zip(self.grid, self.values)
        ]


METHOD_ALIASES = {"fredholm": "nystrom"}


def cdf_table_on(grid, method: str = "painleve") -> CdfTable:
    """Table sur une grille explicite ; "fredholm" est un alias de "nystrom"."""
    method = METHOD_ALIASES.get(method, method)
    grid = np.asarray(grid, dtype=float)
    lo, hi = TW_RANGE
    if grid.size and (grid.min() < lo or grid.max() > hi):
        raise UsageError(f"grille hors de [{lo}, {hi}]")
    if method == "painleve":
        solution = hastings_mcleod()
        values = np.clip(solution.cdf(grid), 0.0, 1.0)
        tolerance = solution.tol
    elif method == "nystrom":
        values = np.array([tracy_widom_cdf(x) for x in grid])
        tolerance = TW_NYSTROM_TOL
    else:
        raise UsageError(f"méthode inconnue : {method} (painleve | nystrom)")
    logger.info("table Tracy-Widom (%s) : %d points", method, grid.size)
    return CdfTable(grid=grid, values=np.maximum.accumulate(values), method=method, tolerance=tolerance)


def tracy_widom_table(
    method: str = "painleve",
    lo: float = TW_DEFAULT_GRID[0],
    hi: float = TW_DEFAULT_GRID[1],
    step: float = TW_TABLE_STEP,
) -> CdfTable:
    count = int(round((hi - lo) / step)) + 1
    return cdf_table_on(np.linspace(lo, hi, count), method)


class TracyWidom:
    """Répartition, densité, quantiles, tirages et moments à partir d'une CdfTable."""

    def __init__(self, table: Optional[CdfTable] = None):
        self.table = table if table is not None else tracy_widom_table("painleve", *TW_RANGE)
        grid, values = self.table.grid, self.table.values
        self._cdf = PchipInterpolator(grid, values, extrapolate=False)
        self._pdf = self._cdf.derivative()
        keep = np.concatenate([[True], np.diff(values) > 0])
        self._ppf = PchipInterpolator(values[keep], grid[keep], extrapolate=False)
        self._lo, self._hi = float(grid[0]), float(grid[-1])

    def cdf(self, x):
        xa = np.asarray(x, dtype=float)
        y = np.where(xa < self._lo, 0.0, np.where(xa > self._hi, 1.0, self._cdf(np.clip(xa, self._lo, self._hi))))
        y = np.clip(y, 0.0, 1.0)
        return float(y) if y.ndim == 0 else y

    def pdf(self, x):
        xa = np.asarray(x, dtype=float)
        inside = (xa >= self._lo) & (xa <= self._hi)
        y = np.where(inside, self._pdf(np.clip(xa, self._lo, self._hi)), 0.0)
        y = np.maximum(y, 0.0)
        return float(y) if y.ndim == 0 else y

    def ppf(self, q):
        qa = np.asarray(q, dtype=float)
        if np.any((qa < 0.0) | (qa > 1.0)):
            raise UsageError("quantile hors de [0, 1]")
        first, last = self._ppf.x[0], self._ppf.x[-1]
        y = np.where(qa <= first, self._lo, np.where(qa >= last, self._hi, self._ppf(np.clip(qa, first, last))))
        return float(y) if y.ndim == 0 else y

    def rvs(self, size: int, seed: Seed = 0) -> np.ndarray:
        rng = as_generator(seed)
        return np.asarray(self.ppf(rng.random(size)))

    def moments(self):
        """(moyenne, variance, asymétrie) par intégration de la densité sur la grille."""
        grid = self.table.grid
        density = self.pdf(grid)
        mass = simpson(density, x=grid)
        mean = simpson(grid * density, x=grid) / mass
        var = simpson((grid - mean) ** 2 * density, x=grid) / mass
        skew = simpson((grid - mean) ** 3 * density, x=grid) / mass / var**1.5
        return float(mean), float(var), float(skew)


@lru_cache(maxsize=1)
def default_tracy_widom() -> TracyWidom:
    return TracyWidom()
