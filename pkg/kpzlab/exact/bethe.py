# kpzlab/exact/bethe.py
"""Racines de Bethe : les L solutions de w^N (w+1)^{L-N} = z (itération d'Aberth-Ehrlich)."""

import logging
from dataclasses import dataclass

import numpy as np

from kpzlab.errors import ConvergenceError, NearCriticalError, UsageError
from kpzlab.numerics import (
    BETHE_MAX_SWEEPS,
    BETHE_MIN_GAP,
    BETHE_POLISH_STEPS,
    BETHE_RESIDUAL_TOL,
    BETHE_STEP_TOL,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BetheRootSet:
    L: int
    N: int
    z: complex
    roots: np.ndarray
    residuals: np.ndarray
    sweeps: int

    @property
    def min_gap(self) -> float:
        return pairwise_min_gap(self.roots)

    @property
    def max_residual(self) -> float:
        return float(self.residuals.max())


def critical_radius(L: int, N: int) -> float:
    """z_c = (N/L)^N (1 - N/L)^{L-N} : |z| où deux racines peuvent se rencontrer (en w = -N/L)."""
    rho = N / L
    return float(rho**N * (1.0 - rho) ** (L - N))


def pairwise_min_gap(roots: np.ndarray) -> float:
    if roots.size < 2:
        return np.inf
    diff = np.abs(roots[:, None] - roots[None, :])
    np.fill_diagonal(diff, np.inf)
    return float(diff.min())


def _check_sizes(L: int, N: int) -> None:
    if L < 2 or not 1 <= N < L:
        raise UsageError(f"paramètres invalides : L={L}, N={N} (L >= 2, 1 <= N < L)")


def _newton_ratio(w: np.ndarray, L: int, N: int, z: complex) -> np.ndarray:
    # p/p' = (P - z) / (P (Lw + N) / (w (w+1))), P = w^N (w+1)^{L-N}
    power = w**N * (w + 1.0) ** (L - N)
    return (1.0 - z / power) * w * (w + 1.0) / (L * w + N)


def _initial_guesses(L: int, N: int) -> np.ndarray:
    k = np.arange(L)
    # phases perturbées selon l'indice pour casser les symétries
    theta = 2.0 * np.pi * (k + 0.25) / L + 0.1 * np.sin(1.7 * k + 0.3)
    return -N / L + 0.5 * np.exp(1j * theta)


def residuals(roots: np.ndarray, L: int, N: int, z: complex) -> np.ndarray:
    return np.abs(roots**N * (roots + 1.0) ** (L - N) - z)


def bethe_roots(L: int, N: int, z: complex) -> BetheRootSet:
    _check_sizes(L, N)
    z = complex(z)
    w = _initial_guesses(L, N)

    delta = previous = np.inf
    for sweep in range(1, BETHE_MAX_SWEEPS + 1):
        ratio = _newton_ratio(w, L, N, z)
        diff = w[:, None] - w[None, :]
        np.fill_diagonal(diff, np.inf)
        repulsion = (1.0 / diff).sum(axis=1)
        step = ratio / (1.0 - ratio * repulsion)
        step = np.where(np.isfinite(step), step, 0.0)
        w = w - step
        delta = float((np.abs(step) / np.maximum(1.0, np.abs(w))).max())
        # arrêt sur tolérance, ou stagnation au niveau de l'arrondi
        if delta <= BETHE_STEP_TOL or (delta < 1e-10 and delta >= previous):
            break
        previous = delta
    else:
        gap = pairwise_min_gap(w)
        if gap < BETHE_MIN_GAP:
            raise NearCriticalError("near-critical z", min_gap=gap, L=L, N=N, z=z, z_c=critical_radius(L, N))
        raise ConvergenceError(
            f"Aberth-Ehrlich non convergé après {BETHE_MAX_SWEEPS} itérations",
            last_delta=delta, L=L, N=N, z=z,
        )

    for _ in range(BETHE_POLISH_STEPS):
        step = _newton_ratio(w, L, N, z)
        w = w - np.where(np.isfinite(step), step, 0.0)

    gap = pairwise_min_gap(w)
    if gap < BETHE_MIN_GAP:
        raise NearCriticalError("near-critical z", min_gap=gap, L=L, N=N, z=z, z_c=critical_radius(L, N))

    res = residuals(w, L, N, z)
    bound = BETHE_RESIDUAL_TOL * max(1.0, abs(z))
    if res.max() > bound:
        raise ConvergenceError("résidu des racines au-delà de la tolérance", last_delta=float(res.max()), L=L, N=N, z=z)

    order = np.lexsort((w.imag, w.real))
    logger.debug("bethe_roots L=%d N=%d |z|=%.3e : %d itérations, écart min %.2e", L, N, abs(z), sweep, gap)
    return BetheRootSet(L=L, N=N, z=z, roots=w[order], residuals=res[order], sweeps=sweep)
