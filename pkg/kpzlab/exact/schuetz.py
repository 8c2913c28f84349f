# kpzlab/exact/schuetz.py
"""
Probabilité de transition du TASEP sur Z (formule déterminantale de Schütz).

Entrée (i, j) : (1 / 2 pi i) * intégrale de s^{j-i} (s+1)^{-x_i+y_j+i-j-1} e^{ts} ds
sur un cercle entourant 0 et -1. Lignes indexées par X, colonnes par Y.
Avec N = 1 on retrouve la loi de Poisson du saut d'une particule isolée.
"""

import logging
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np
from scipy import stats

from kpzlab.errors import ToleranceError, UsageError
from kpzlab.exact.contour import ContourSpec, QuadratureResult, circle_integral
from kpzlab.numerics import (
    CONTOUR_CENTER,
    CONTOUR_MAX_NODES,
    CONTOUR_MIN_NODES,
    CONTOUR_RADIUS,
    CONTOUR_TOL,
    IMAG_RESIDUE_TOL,
    POISSON_TAIL_BOUND,
    PROBABILITY_SLACK,
)

logger = logging.getLogger(__name__)

DEFAULT_CONTOUR = ContourSpec(center=CONTOUR_CENTER, radius=CONTOUR_RADIUS, nodes=CONTOUR_MIN_NODES)


@dataclass
class TransitionResult:
    probability: float
    imag_residue: float
    diagnostics: Dict[str, float] = field(default_factory=dict)


def check_ordered(values: Sequence[int], name: str) -> Tuple[int, ...]:
    out = tuple(int(v) for v in values)
    if not out:
        raise UsageError(f"{name} vide")
    if any(b <= a for a, b in zip(out, out[1:])):
        raise UsageError(f"{name} doit être strictement croissant : {out}")
    return out


@lru_cache(maxsize=65536)
def _entry(a: int, b: int, t: float, c: ContourSpec) -> QuadratureResult:
    def integrand(s: np.ndarray) -> np.ndarray:
        return s**a * (s + 1.0) ** b * np.exp(t * s)

    return circle_integral(integrand, c, CONTOUR_MAX_NODES, CONTOUR_TOL)


def _check_contour(c: ContourSpec) -> None:
    if not (c.encloses(0.0) and c.encloses(-1.0)):
        raise UsageError(f"le contour {c} doit entourer 0 et -1")


def schuetz_entry(
    i: int, j: int, xi: int, yj: int, t: float, c: Optional[ContourSpec] = None
) -> complex:
    c = DEFAULT_CONTOUR if c is None else c
    _check_contour(c)
    return _entry(j - i, -xi + yj + i - j - 1, float(t), c).value


def schuetz_transition_detail(
    X: Sequence[int], Y: Sequence[int], t: float, c: Optional[ContourSpec] = None
) -> TransitionResult:
    X = check_ordered(X, "X")
    Y = check_ordered(Y, "Y")
    if len(X) != len(Y):
        raise UsageError("X et Y doivent avoir le même nombre de particules")
    if t < 0:
        raise UsageError("t doit être >= 0")
    c = DEFAULT_CONTOUR if c is None else c
    _check_contour(c)

    n = len(X)
    matrix = np.empty((n, n), dtype=complex)
    max_nodes, max_delta = 0, 0.0
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            q = _entry(j - i, -X[i - 1] + Y[j - 1] + i - j - 1, float(t), c)
            matrix[i - 1, j - 1] = q.value
            max_nodes = max(max_nodes, q.nodes)
            max_delta = max(max_delta, q.delta)

    det = complex(np.linalg.det(matrix))
    residue = abs(det.imag)
    if residue > IMAG_RESIDUE_TOL:
        raise ToleranceError("résidu imaginaire au-delà de la tolérance", imag=residue, X=list(X), Y=list(Y), t=t)
    if not -PROBABILITY_SLACK <= det.real <= 1.0 + PROBABILITY_SLACK:
        raise ToleranceError("probabilité hors de [0, 1]", value=det.real, X=list(X), Y=list(Y), t=t)
    return TransitionResult(
        probability=det.real,
        imag_residue=residue,
        diagnostics={"nodes": max_nodes, "last_delta": max_delta},
    )


def schuetz_transition(
    X: Sequence[int], Y: Sequence[int], t: float, c: Optional[ContourSpec] = None
) -> float:
    return schuetz_transition_detail(X, Y, t, c).probability


# ---------------------------
# Support tronqué (sommes de normalisation)
# ---------------------------

def jump_cap(n: int, t: float, bound: float = POISSON_TAIL_BOUND) -> int:
    """Plus petit K tel que n * P(Poisson(t) > K) < bound."""
    k = int(math.ceil(t))
    while n * stats.poisson.sf(k, t) >= bound:
        k += 1
    return k


def truncated_support(Y: Sequence[int], t: float, bound: float = POISSON_TAIL_BOUND) -> Tuple[List[Tuple[int, ...]], float]:
    """
    États X atteignables depuis Y où chaque particule fait au plus K sauts.
    Retourne (états, borne de la masse manquante).
    """
    Y = check_ordered(Y, "Y")
    n = len(Y)
    k = jump_cap(n, t, bound)

    def extend(prefix: List[int], idx: int) -> Iterator[Tuple[int, ...]]:
        if idx == n:
            yield tuple(prefix)
            return
        low = Y[idx] if not prefix else max(Y[idx], prefix[-1] + 1)
        for x in range(low, Y[idx] + k + 1):
            prefix.append(x)
            yield from extend(prefix, idx + 1)
            prefix.pop()

    states = list(extend([], 0))
    tail = float(n * stats.poisson.sf(k, t))
    logger.debug("support tronqué : %d états, K=%d, queue <= %.2e", len(states), k, tail)
    return states, tail
