# kpzlab/limits/airy.py
"""
Fonction d'Airy Ai et sa dérivée sur [-40, 40].

|x| <= 8 : série de Maclaurin (combinaison de 0F1) en précision étendue mpmath,
la compensation entre les deux séries fait perdre jusqu'à ~15 chiffres.
|x| > 8 : développements asymptotiques tronqués au plus petit terme.
"""

import math
from functools import lru_cache
from typing import Tuple

import mpmath
import numpy as np

from kpzlab.errors import UsageError
from kpzlab.numerics import AIRY_RANGE, AIRY_SERIES_CUTOFF, AIRY_SERIES_GUARD_DIGITS

_MAX_TERMS = 60
_SQRT_PI = math.sqrt(math.pi)


def _asymptotic_coefficients(count: int) -> Tuple[np.ndarray, np.ndarray]:
    u = np.empty(count)
    v = np.empty(count)
    u[0], v[0] = 1.0, 1.0
    for k in range(1, count):
        u[k] = u[k - 1] * (6 * k - 5) * (6 * k - 3) * (6 * k - 1) / (216.0 * (2 * k - 1) * k)
        v[k] = -(6 * k + 1) / (6 * k - 1) * u[k]
    return u, v


_U, _V = _asymptotic_coefficients(_MAX_TERMS)


def _sum_to_smallest(terms: np.ndarray) -> float:
    """Somme partielle arrêtée avant que les termes ne recroissent."""
    total, previous = 0.0, math.inf
    for term in terms:
        if abs(term) > previous:
            break
        total += term
        previous = abs(term)
    return total


def _truncated_sum(coeffs: np.ndarray, zeta: float) -> float:
    # sum_k c_k zeta^{-k}
    return _sum_to_smallest(coeffs * zeta ** -np.arange(coeffs.size, dtype=float))


def _alternating(coeffs: np.ndarray, zeta: float, offset: int) -> float:
    # sum_k (-1)^k c_{2k+offset} zeta^{-(2k+offset)}
    picked = coeffs[offset::2]
    k = np.arange(picked.size)
    return _sum_to_smallest((-1.0) ** k * picked * zeta ** -(2.0 * k + offset))


def _series(x: float) -> Tuple[float, float]:
    with mpmath.workdps(15 + AIRY_SERIES_GUARD_DIGITS):
        xm = mpmath.mpf(x)
        w = xm**3 / 9
        c1 = 1 / (mpmath.cbrt(9) * mpmath.gamma(mpmath.mpf(2) / 3))
        c2 = 1 / (mpmath.cbrt(3) * mpmath.gamma(mpmath.mpf(1) / 3))
        ai = c1 * mpmath.hyp0f1(mpmath.mpf(2) / 3, w) - c2 * xm * mpmath.hyp0f1(mpmath.mpf(4) / 3, w)
        aip = c1 * xm**2 / 2 * mpmath.hyp0f1(mpmath.mpf(5) / 3, w) - c2 * mpmath.hyp0f1(mpmath.mpf(1) / 3, w)
        return float(ai), float(aip)


def _asymptotic_right(x: float) -> Tuple[float, float]:
    zeta = 2.0 / 3.0 * x**1.5
    decay = math.exp(-zeta) / (2.0 * _SQRT_PI)
    quarter = x**0.25
    signs = (-1.0) ** np.arange(_MAX_TERMS)
    ai = decay / quarter * _truncated_sum(signs * _U, zeta)
    aip = -decay * quarter * _truncated_sum(signs * _V, zeta)
    return ai, aip


def _asymptotic_left(x: float) -> Tuple[float, float]:
    y = -x
    zeta = 2.0 / 3.0 * y**1.5
    phase = zeta - math.pi / 4.0
    quarter = y**0.25
    p, q = _alternating(_U, zeta, 0), _alternating(_U, zeta, 1)
    r, s = _alternating(_V, zeta, 0), _alternating(_V, zeta, 1)
    ai = (math.cos(phase) * p + math.sin(phase) * q) / (_SQRT_PI * quarter)
    aip = quarter * (math.sin(phase) * r - math.cos(phase) * s) / _SQRT_PI
    return ai, aip


@lru_cache(maxsize=200_000)
def _airy(x: float) -> Tuple[float, float]:
    if abs(x) <= AIRY_SERIES_CUTOFF:
        return _series(x)
    if x > 0:
        return _asymptotic_right(x)
    return _asymptotic_left(x)


def airy(x: float) -> Tuple[float, float]:
    """(Ai(x), Ai'(x)) pour x dans [-40, 40]."""
    x = float(x)
    if not math.isfinite(x) or abs(x) > AIRY_RANGE:
        raise UsageError(f"x={x} hors du domaine [-{AIRY_RANGE}, {AIRY_RANGE}]")
    return _airy(x)


def airy_array(xs: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Version tableau ; les points au-delà de +40 valent 0 (Ai(40) < 1e-70)."""
    xs = np.asarray(xs, dtype=float)
    ai = np.zeros_like(xs)
    aip = np.zeros_like(xs)
    for idx, x in np.ndenumerate(xs):
        if x > AIRY_RANGE:
            continue
        if x < -AIRY_RANGE:
            raise UsageError(f"x={x} hors du domaine de Ai")
        ai[idx], aip[idx] = _airy(float(x))
    return ai, aip
