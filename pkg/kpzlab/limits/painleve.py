# kpzlab/limits/painleve.py
"""
Solution de Hastings-McLeod de Painlevé II, q'' = x q + 2 q^3, q ~ Ai en +infini,
et F_TW(x) = exp(-I(x)) avec I(x) = intégrale sur (x, inf) de (s - x) q(s)^2 ds.

La solution est instable en marchant vers la gauche ; on résout donc le
problème aux limites sur [-14, 8] par collocation (scipy.integrate.solve_bvp)
pour y = (q, q', I, I'), avec I'' = q^2.
"""

import logging
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.integrate import cumulative_trapezoid, solve_bvp

from kpzlab.errors import BlowUpError, UsageError
from kpzlab.limits.airy import airy, airy_array
from kpzlab.numerics import (
    PAINLEVE_INITIAL_NODES,
    PAINLEVE_LEFT,
    PAINLEVE_MAX_NODES,
    PAINLEVE_RIGHT,
    PAINLEVE_TOL,
    TW_RANGE,
)

logger = logging.getLogger(__name__)


def left_asymptotic(x: float) -> float:
    """q(x) ~ sqrt(-x/2) (1 + x^-3/8 - 73 x^-6/128 + 10657 x^-9/1024), x -> -inf."""
    return math.sqrt(-x / 2.0) * (1.0 + x**-3 / 8.0 - 73.0 * x**-6 / 128.0 + 10657.0 * x**-9 / 1024.0)


def right_boundary(b: float):
    """(q, I, I') en b à partir de Ai : intégrale de Ai^2 et de (s-b) Ai^2 sous forme close."""
    ai, aip = airy(b)
    tail = aip**2 - b * ai**2
    first_moment = (2.0 * b**2 * ai**2 - 2.0 * b * aip**2 - ai * aip) / 3.0
    return ai, first_moment, -tail


def _system(x, y):
    q, dq, _, di = y
    return np.vstack([dq, x * q + 2.0 * q**3, di, q**2])


def _initial_guess(mesh: np.ndarray, b: float) -> np.ndarray:
    ai, _ = airy_array(np.clip(mesh, 0.0, None))
    ai0 = airy(0.0)[0]
    q0 = np.where(mesh >= 0.0, ai, np.sqrt(np.maximum(-mesh / 2.0, 0.0) + ai0**2))
    dq0 = np.gradient(q0, mesh)
    _, i_b, di_b = right_boundary(b)
    # I' = -(intégrale de q^2 sur (x, b)) + I'(b), I intégré depuis la droite
    rev = cumulative_trapezoid(q0[::-1] ** 2, mesh[::-1], initial=0.0)[::-1]
    di0 = di_b + rev
    i0 = i_b + cumulative_trapezoid(di0[::-1], mesh[::-1], initial=0.0)[::-1]
    return np.vstack([q0, dq0, i0, di0])


@dataclass(frozen=True)
class HastingsMcLeod:
    left: float
    right: float
    tol: float
    solution: object

    def _values(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if np.any(x < self.left) or np.any(x > self.right):
            raise UsageError(f"x hors de [{self.left}, {self.right}]")
        return self.solution.sol(x)

    def q(self, x):
        return self._values(x)[0]

    def cdf(self, x):
        return np.exp(-self._values(x)[2])


@lru_cache(maxsize=4)
def hastings_mcleod(tol: float = PAINLEVE_TOL) -> HastingsMcLeod:
    a, b = PAINLEVE_LEFT, PAINLEVE_RIGHT
    q_left = left_asymptotic(a)
    q_right, i_right, di_right = right_boundary(b)

    def boundary(ya, yb):
        return np.array([ya[0] - q_left, yb[0] - q_right, yb[2] - i_right, yb[3] - di_right])

    mesh = np.linspace(a, b, PAINLEVE_INITIAL_NODES)
    sol = solve_bvp(
        _system,
        boundary,
        mesh,
        _initial_guess(mesh, b),
        tol=tol,
        bc_tol=tol,
        max_nodes=PAINLEVE_MAX_NODES,
    )
    if not sol.success:
        raise BlowUpError(f"Painlevé II : collocation en échec ({sol.message})", tol=tol, nodes=int(sol.x.size))
    values = sol.sol(np.linspace(a, b, 400))
    if not np.all(np.isfinite(values)) or np.abs(values[0]).max() > 10.0 * math.sqrt(-a):
        raise BlowUpError("Painlevé II : solution non bornée", tol=tol)
    logger.info("Hastings-McLeod résolu : %d nœuds, tol=%.1e", sol.x.size, tol)
    return HastingsMcLeod(left=a, right=b, tol=tol, solution=sol)


def painleve2_tw_cdf(x: float, tol: float = PAINLEVE_TOL) -> float:
    lo, hi = TW_RANGE
    if not lo <= x <= hi:
        raise UsageError(f"x={x} hors de [{lo}, {hi}]")
    return float(min(1.0, max(0.0, hastings_mcleod(tol).cdf(x))))
