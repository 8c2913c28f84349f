# kpzlab/exact/contour.py
"""Règle des trapèzes sur un cercle, avec doublement emboîté du nombre de nœuds."""

from dataclasses import dataclass
from typing import Callable

import mpmath
import numpy as np

from kpzlab.errors import ConvergenceError, UsageError

# plancher d'arrondi : on ne peut pas exiger mieux que quelques eps * max|f|
_ROUNDOFF_FACTOR = 64.0 * np.finfo(float).eps


@dataclass(frozen=True)
class ContourSpec:
    """Cercle |s - center| = radius, `nodes` = nombre de nœuds de départ (doublé jusqu'à convergence)."""

    center: complex
    radius: float
    nodes: int = 16

    def __post_init__(self):
        if not self.radius > 0:
            raise UsageError(f"rayon de contour invalide : {self.radius}")
        if self.nodes < 8 or self.nodes % 2:
            raise UsageError(f"nombre de nœuds invalide : {self.nodes} (pair, >= 8)")

    def encloses(self, point: complex) -> bool:
        return abs(complex(point) - complex(self.center)) < self.radius


@dataclass(frozen=True)
class QuadratureResult:
    value: complex
    nodes: int
    delta: float
    floor: float


def circle_integral(
    f: Callable[[np.ndarray], np.ndarray],
    spec: ContourSpec,
    max_nodes: int,
    tol: float,
) -> QuadratureResult:
    """
    (1 / 2 pi i) * intégrale de f(s) ds sur le cercle, par trapèzes.

    f reçoit un tableau de nœuds complexes. Les nœuds à 2K contiennent ceux à K,
    seuls les nouveaux sont évalués. Arrêt quand deux valeurs successives
    diffèrent de moins de max(tol, plancher d'arrondi).
    """
    center = complex(spec.center)

    def weighted(thetas: np.ndarray) -> np.ndarray:
        offsets = spec.radius * np.exp(1j * thetas)
        return f(center + offsets) * offsets

    k = spec.nodes
    terms = weighted(2.0 * np.pi * np.arange(k) / k)
    total = terms.sum()
    scale = float(np.abs(terms).max())
    value = total / k
    delta = np.inf

    while k < max_nodes:
        # nœuds impairs de la grille 2K
        fresh = weighted(2.0 * np.pi * (np.arange(k) + 0.5) / k)
        total += fresh.sum()
        scale = max(scale, float(np.abs(fresh).max()))
        k *= 2
        new_value = total / k
        delta = abs(new_value - value)
        value = new_value
        floor = _ROUNDOFF_FACTOR * scale
        if delta < max(tol, floor):
            return QuadratureResult(value=complex(value), nodes=k, delta=float(delta), floor=floor)

    raise ConvergenceError(
        f"quadrature non convergée après {k} nœuds",
        last_delta=float(delta),
        nodes=k,
    )


def circle_integral_mp(
    f: Callable[[mpmath.mpc], mpmath.mpc],
    spec: ContourSpec,
    max_nodes: int,
    tol: float,
) -> QuadratureResult:
    """
    Même règle que `circle_integral`, nœud par nœud en mpmath.

    La précision est celle du contexte courant (mpmath.workdps chez l'appelant) ;
    le plancher d'arrondi suit mpmath.eps.
    """
    center = mpmath.mpc(complex(spec.center))
    radius = mpmath.mpf(spec.radius)

    def weighted(numerator: int, k: int):
        # angle pi * numerator / k
        offset = radius * mpmath.expjpi(mpmath.mpf(numerator) / k)
        return f(center + offset) * offset

    k = spec.nodes
    terms = [weighted(2 * m, k) for m in range(k)]
    total = mpmath.fsum(terms)
    scale = max(abs(v) for v in terms)
    value = total / k
    delta = mpmath.inf

    while k < max_nodes:
        fresh = [weighted(2 * m + 1, k) for m in range(k)]
        total += mpmath.fsum(fresh)
        scale = max(scale, max(abs(v) for v in fresh))
        k *= 2
        new_value = total / k
        delta = abs(new_value - value)
        value = new_value
        floor = float(64 * mpmath.eps * scale)
        if delta < max(tol, floor):
            return QuadratureResult(value=complex(value), nodes=k, delta=float(delta), floor=floor)

    raise ConvergenceError(
        f"quadrature mpmath non convergée après {k} nœuds",
        last_delta=float(delta),
        nodes=k,
        dps=mpmath.mp.dps,
    )
