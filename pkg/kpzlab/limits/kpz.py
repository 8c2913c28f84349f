# kpzlab/limits/kpz.py
"""Profil hydrodynamique, loi à un point du point fixe KPZ, changements d'échelle."""

import math
from typing import Callable, List, Optional

import numpy as np

from kpzlab.errors import UsageError
from kpzlab.limits.tracy_widom import tracy_widom_cdf
from kpzlab.models import MultiPointSpec, ScalePoint
from kpzlab.numerics import TW_RANGE

# constante du régime brownien de l'anneau : s^{1/2} pi^{1/4} / sqrt(2)
BROWNIAN_SCALE = math.pi**0.25 / math.sqrt(2.0)


def hydro_profile(x, t: float):
    """h(x, t) = (t^2 + x^2) / (2t) si |x| < t, |x| sinon (condition step)."""
    if not t > 0:
        raise UsageError("t doit être > 0")
    xa = np.asarray(x, dtype=float)
    out = np.where(np.abs(xa) >= t, np.abs(xa), (t * t + xa * xa) / (2.0 * t))
    return float(out) if out.ndim == 0 else out


def tw_argument(p: ScalePoint) -> float:
    return p.h / p.tau ** (1.0 / 3.0) + p.gamma**2 / (4.0 * p.tau ** (4.0 / 3.0))


def kpz_one_point_cdf(p: ScalePoint, cdf: Optional[Callable[[float], float]] = None) -> float:
    """F_TW(h / tau^{1/3} + gamma^2 / (4 tau^{4/3})) ; hors de [-12, 8] on renvoie 0 ou 1."""
    arg = tw_argument(p)
    lo, hi = TW_RANGE
    if arg < lo:
        return 0.0
    if arg > hi:
        return 1.0
    return float((cdf or tracy_widom_cdf)(arg))


def kpz_rescale(p: ScalePoint, alpha: float) -> ScalePoint:
    """(h, gamma, tau) -> (alpha h, alpha^2 gamma, alpha^3 tau)."""
    if not alpha > 0:
        raise UsageError("alpha doit être > 0")
    return ScalePoint(h=alpha * p.h, gamma=alpha**2 * p.gamma, tau=alpha**3 * p.tau)


def d_matrix_diag(z: complex, spec: MultiPointSpec) -> List[complex]:
    """Diagonale de D(z) : exp(-tau_i z^3 / 3 + gamma_i z^2 / 2 + h_i z), i = 1..m, puis 1."""
    z = complex(z)
    entries = [
        complex(np.exp(-p.tau * z**3 / 3.0 + p.gamma * z**2 / 2.0 + p.h * z))
        for p in spec.points
    ]
    return entries + [1.0 + 0.0j]


# ---------------------------
# Anneau : régimes de croisement
# ---------------------------

def periodic_small_time_map(p: ScalePoint, eps: float) -> ScalePoint:
    """((tau eps)^{1/3} h, (tau eps)^{2/3} gamma, tau eps) : vers le point fixe KPZ quand eps -> 0."""
    if not eps > 0:
        raise UsageError("eps doit être > 0")
    scale = p.tau * eps
    return ScalePoint(h=scale ** (1.0 / 3.0) * p.h, gamma=scale ** (2.0 / 3.0) * p.gamma, tau=scale)


def periodic_large_time_map(p: ScalePoint, s: float) -> ScalePoint:
    """(-s tau + s^{1/2} pi^{1/4} / sqrt(2) h, gamma, s tau) : vers un mouvement brownien quand s -> inf."""
    if not s > 0:
        raise UsageError("s doit être > 0")
    return ScalePoint(h=-s * p.tau + math.sqrt(s) * BROWNIAN_SCALE * p.h, gamma=p.gamma, tau=s * p.tau)
