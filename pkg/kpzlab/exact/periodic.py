# kpzlab/exact/periodic.py
"""
Probabilité de transition du TASEP périodique (positions dans W_N^L).

P_Y(X; t) = (1 / 2 pi i) * intégrale dz / z de
  det[ (1/L) sum_w w^{j-i+1} (w+1)^{-x_i+y_j+i-j} e^{tw} / (w + N/L) ]
où w parcourt les L racines de Bethe de w^N (w+1)^{L-N} = z.

L'intégrande compense des termes en |z|^{-k} : évaluation en mpmath, à une
précision fixée par contour d'après la borne de Hadamard (hadamard_digits).
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Dict, Optional, Sequence, Tuple

import mpmath
import numpy as np

from kpzlab.errors import ToleranceError, UsageError
from kpzlab.exact.bethe import bethe_roots, critical_radius
from kpzlab.exact.contour import ContourSpec, circle_integral_mp
from kpzlab.exact.schuetz import check_ordered
from kpzlab.numerics import (
    PERIODIC_GUARD_DIGITS,
    PERIODIC_MAX_NODES,
    PERIODIC_MIN_NODES,
    PERIODIC_RADIUS_CHECK_FRACTION,
    PERIODIC_RADIUS_TOL,
    PERIODIC_TOL,
    PERIODIC_Z_RADIUS_FRACTION,
    PROBABILITY_SLACK,
)

logger = logging.getLogger(__name__)


@dataclass
class PeriodicResult:
    probability: float
    imag_residue: float
    diagnostics: Dict[str, float] = field(default_factory=dict)


def check_ring_state(X: Sequence[int], L: int, name: str) -> Tuple[int, ...]:
    X = check_ordered(X, name)
    if X[-1] - X[0] >= L:
        raise UsageError(f"{name} hors de W_N^L : x_N - x_1 doit être < L={L}")
    return X


def shift_label(X: Sequence[int], L: int) -> Tuple[int, ...]:
    """(x_1, ..., x_N) -> (x_2, ..., x_N, x_1 + L) : même configuration, étiquettes décalées."""
    return tuple(X[1:]) + (X[0] + L,)


def default_z_contour(L: int, N: int, fraction: float = PERIODIC_Z_RADIUS_FRACTION) -> ContourSpec:
    return ContourSpec(center=0.0, radius=fraction * critical_radius(L, N), nodes=PERIODIC_MIN_NODES)


def _exponents(X, Y) -> Tuple[np.ndarray, np.ndarray]:
    n = len(X)
    i_idx = np.arange(1, n + 1)[:, None]
    j_idx = np.arange(1, n + 1)[None, :]
    a = j_idx - i_idx + 1
    b = -np.asarray(X)[:, None] + np.asarray(Y)[None, :] + i_idx - j_idx
    return a, b


def hadamard_digits(X, Y, t: float, L: int, zc: ContourSpec) -> float:
    """
    log10 du max, sur les nœuds de départ, de la borne de Hadamard prod_i ||ligne_i||
    (entrées majorées terme à terme, en double précision).
    """
    n = len(X)
    a, b = _exponents(X, Y)
    worst = 0.0
    for theta in 2.0 * np.pi * np.arange(zc.nodes) / zc.nodes:
        w = bethe_roots(L, n, zc.radius * np.exp(1j * theta)).roots
        weight = np.abs(np.exp(t * w) / (w + n / L)) / L
        bound = np.einsum(
            "r,ijr->ij",
            weight,
            np.abs(w)[None, None, :] ** a[:, :, None] * np.abs(w + 1.0)[None, None, :] ** b[:, :, None],
        )
        worst = max(worst, float(np.log10(np.linalg.norm(bound, axis=1)).sum()))
    return worst


def _polish_steps(dps: int) -> int:
    # Newton double les chiffres exacts à chaque pas, depuis ~15
    return int(math.ceil(math.log2(max(dps, 15) / 15.0))) + 2


def _det_mp(z, a: np.ndarray, b: np.ndarray, t: float, L: int, steps: int):
    n = a.shape[0]
    roots = []
    for w0 in bethe_roots(L, n, complex(z)).roots:
        w = mpmath.mpc(complex(w0))
        for _ in range(steps):
            power = w**n * (w + 1) ** (L - n)
            w -= (power - z) / (power * (n / w + (L - n) / (w + 1)))
        roots.append(w)
    weights = [mpmath.exp(t * w) / (w + mpmath.mpf(n) / L) / L for w in roots]
    matrix = mpmath.matrix(n, n)
    for i in range(n):
        for j in range(n):
            matrix[i, j] = mpmath.fsum(
                wt * w ** int(a[i, j]) * (w + 1) ** int(b[i, j]) for w, wt in zip(roots, weights)
            )
    return mpmath.det(matrix)


def _integrate(X, Y, t: float, L: int, zc: ContourSpec):
    # l'intégrande atteint 10^digits alors que le résultat est dans [0, 1]
    digits = hadamard_digits(X, Y, t, L, zc)
    dps = PERIODIC_GUARD_DIGITS + int(math.ceil(digits))
    a, b = _exponents(X, Y)
    with mpmath.workdps(dps):
        steps = _polish_steps(dps)
        tm = mpmath.mpf(t)
        # dz / (2 pi i z) : circle_integral_mp multiplie déjà par (z - 0)
        result = circle_integral_mp(lambda z: _det_mp(z, a, b, tm, L, steps) / z, zc, PERIODIC_MAX_NODES, PERIODIC_TOL)
    return result, dps


def periodic_transition_detail(
    X: Sequence[int],
    Y: Sequence[int],
    t: float,
    L: int,
    zc: Optional[ContourSpec] = None,
    check_radius: bool = True,
) -> PeriodicResult:
    X = check_ring_state(X, L, "X")
    Y = check_ring_state(Y, L, "Y")
    n = len(X)
    if len(Y) != n:
        raise UsageError("X et Y doivent avoir le même nombre de particules")
    if not 1 <= n < L:
        raise UsageError(f"N={n} doit être dans [1, L-1], L={L}")
    if t < 0:
        raise UsageError("t doit être >= 0")
    zc = default_z_contour(L, n) if zc is None else zc
    if abs(complex(zc.center)) != 0.0:
        raise UsageError("le contour en z doit être centré en 0")

    main, dps = _integrate(X, Y, float(t), L, zc)
    diagnostics = {"nodes": main.nodes, "last_delta": main.delta, "z_radius": zc.radius, "dps": dps}

    if check_radius:
        alt_spec = ContourSpec(
            center=0.0,
            radius=zc.radius * PERIODIC_RADIUS_CHECK_FRACTION / PERIODIC_Z_RADIUS_FRACTION,
            nodes=zc.nodes,
        )
        alt, _ = _integrate(X, Y, float(t), L, alt_spec)
        sensitivity = abs(alt.value - main.value)
        diagnostics["radius_sensitivity"] = sensitivity
        if sensitivity > PERIODIC_RADIUS_TOL:
            raise ToleranceError("sensibilité au rayon du contour en z", sensitivity=sensitivity, X=list(X), Y=list(Y), t=t)

    value = main.value
    residue = abs(value.imag)
    if residue > PERIODIC_RADIUS_TOL:
        raise ToleranceError("résidu imaginaire au-delà de la tolérance", imag=residue, X=list(X), Y=list(Y), t=t)
    if not -PROBABILITY_SLACK - PERIODIC_RADIUS_TOL <= value.real <= 1.0 + PROBABILITY_SLACK + PERIODIC_RADIUS_TOL:
        raise ToleranceError("probabilité hors de [0, 1]", value=value.real, X=list(X), Y=list(Y), t=t)
    logger.debug("periodic_transition X=%s Y=%s t=%g : %.12g (%d nœuds)", X, Y, t, value.real, main.nodes)
    return PeriodicResult(probability=value.real, imag_residue=residue, diagnostics=diagnostics)


def periodic_transition(
    X: Sequence[int],
    Y: Sequence[int],
    t: float,
    L: int,
    zc: Optional[ContourSpec] = None,
    check_radius: bool = True,
) -> float:
    return periodic_transition_detail(X, Y, t, L, zc, check_radius).probability
