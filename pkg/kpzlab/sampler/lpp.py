# kpzlab/sampler/lpp.py
"""Percolation de dernier passage dirigée (DLPP) et couplage avec la hauteur TASEP."""

import math
from dataclasses import dataclass

import numpy as np

from kpzlab.errors import TableTooSmallError, UsageError
from kpzlab.models import WeightKind, WeightSpec
from kpzlab.numerics import LPP_HYDRO_MARGIN
from kpzlab.rng import Seed, as_generator
from kpzlab.sampler._kernels import last_passage, last_passage_corner

EXP_WEIGHTS = WeightSpec(kind=WeightKind.exp)


@dataclass(frozen=True)
class LppTable:
    m: int
    n: int
    weights: np.ndarray
    lpt: np.ndarray

    def at(self, i: int, j: int) -> float:
        """L(i, j) en indices 1-based."""
        return float(self.lpt[i - 1, j - 1])


def draw_weights(m: int, n: int, spec: WeightSpec, rng: np.random.Generator) -> np.ndarray:
    kind = spec.kind
    if kind == WeightKind.exp:
        return rng.standard_exponential((m, n))
    if kind == WeightKind.geometric:
        # P(w = k) = (1 - q) q^k, k >= 0
        return rng.geometric(1.0 - spec.q, (m, n)).astype(float) - 1.0
    if kind == WeightKind.plus_minus_one:
        return 2.0 * rng.integers(0, 2, (m, n)).astype(float) - 1.0
    if kind == WeightKind.uniform_centered:
        root3 = math.sqrt(3.0)
        return rng.uniform(-root3, root3, (m, n))
    if kind == WeightKind.gaussian:
        return rng.normal(0.0, spec.sigma, (m, n))
    raise UsageError(f"loi de poids inconnue : {kind}")


def _check_extents(m: int, n: int) -> None:
    if m < 1 or n < 1:
        raise UsageError(f"dimensions invalides : m={m}, n={n} (>= 1 attendu)")


def table_from_weights(weights: np.ndarray) -> LppTable:
    weights = np.ascontiguousarray(weights, dtype=float)
    if weights.ndim != 2:
        raise UsageError("la grille de poids doit être 2D")
    _check_extents(*weights.shape)
    m, n = weights.shape
    return LppTable(m=m, n=n, weights=weights, lpt=last_passage(weights))


def dlpp_table(m: int, n: int, spec: WeightSpec = EXP_WEIGHTS, seed: Seed = 0) -> LppTable:
    _check_extents(m, n)
    rng = as_generator(seed)
    return table_from_weights(draw_weights(m, n, spec, rng))


def dlpp_corner(m: int, n: int, spec: WeightSpec = EXP_WEIGHTS, seed: Seed = 0) -> float:
    """L(m, n) seul, sans garder la table (mémoire O(n))."""
    _check_extents(m, n)
    rng = as_generator(seed)
    return float(last_passage_corner(np.ascontiguousarray(draw_weights(m, n, spec, rng))))


def thin_dlpp(n: int, a: float, spec: WeightSpec, seed: Seed = 0) -> float:
    """L(n, k) avec k = [n^a]."""
    if not 0 < a < 1:
        raise UsageError("l'exposant a doit être dans (0, 1)")
    k = max(1, int(math.floor(n**a)))
    return dlpp_corner(n, k, spec, seed)


# ---------------------------
# Couplage hauteur / DLPP
# ---------------------------

def height_from_dlpp(table: LppTable, x: int, t: float, guard: bool = True) -> int:
    """
    h(x, t) = max{ m + n : m - n = x, L(m, n) <= t }, |x| si aucun (m, n).

    Avec guard=True, la case diagonale suivant le maximiseur doit être dans la
    table avec L > t, sinon TableTooSmallError. guard=False rend le maximum
    sur les cases présentes (borne inférieure de la hauteur).
    """
    if t < 0:
        raise UsageError("t doit être >= 0")
    if t == 0:
        return abs(x)
    # première case de la diagonale m - n = x
    if x >= 0:
        m, n = x + 1, 1
    else:
        m, n = 1, 1 - x
    best = abs(x)
    while True:
        if m > table.m or n > table.n:
            if not guard:
                return best
            raise TableTooSmallError(
                "table-too-small",
                x=x, t=t, m=table.m, n=table.n,
            )
        if table.lpt[m - 1, n - 1] > t:
            return best
        best = m + n
        m += 1
        n += 1


def hydro_extent(t: float, x_max: int) -> int:
    """Taille de table carrée suffisante (avec marge) pour |x| <= x_max au temps t."""
    return int(math.ceil(LPP_HYDRO_MARGIN * (max(t, x_max) + 4.0 * math.sqrt(max(t, 1.0))))) + 8


def diagonal_extent(x: int, t: float) -> tuple[int, int]:
    """
    Table (m, n) suffisante pour h(x, t) seul : le maximiseur de la diagonale
    m - n = x reste près de ((h + x) / 2, (h - x) / 2) avec h le profil de Rost,
    à O(t^{1/3}) près.
    """
    if t < 0:
        raise UsageError("t doit être >= 0")
    ax = abs(x)
    h = (t * t + x * x) / (2.0 * t) if ax < t else float(ax)
    slack = 8.0 * max(t, 1.0) ** (1.0 / 3.0) + 8.0
    m = int(math.ceil(LPP_HYDRO_MARGIN * ((h + x) / 2.0 + slack))) + 1
    n = int(math.ceil(LPP_HYDRO_MARGIN * ((h - x) / 2.0 + slack))) + 1
    return m, n
