# kpzlab/harness/stats.py
"""ECDF, tests de Kolmogorov-Smirnov à un et deux échantillons, bandes DKW, moments."""

import math
from typing import Callable, Dict, Optional, Sequence

import numpy as np
from scipy import stats
from statsmodels.distributions.empirical_distribution import ECDF

from kpzlab.errors import UsageError
from kpzlab.models import KsResult
from kpzlab.numerics import KS_CONFIDENCE_DELTA


def _as_samples(samples: Sequence[float], name: str = "échantillon") -> np.ndarray:
    values = np.asarray(samples, dtype=float)
    if values.size == 0:
        raise UsageError(f"{name} vide")
    if not np.all(np.isfinite(values)):
        raise UsageError(f"{name} : valeurs non finies")
    return values


def ecdf(samples: Sequence[float]) -> ECDF:
    """Fonction de répartition empirique, continue à droite (F(x) = #{X_i <= x} / n)."""
    return ECDF(_as_samples(samples), side="right")


def dkw_epsilon(n: int, delta: float = KS_CONFIDENCE_DELTA) -> float:
    """sup |F_n - F| <= eps avec probabilité >= 1 - delta."""
    if n < 1 or not 0 < delta < 1:
        raise UsageError("n >= 1 et delta dans (0, 1) attendus")
    return math.sqrt(math.log(2.0 / delta) / (2.0 * n))


def ks_one_sample(
    samples: Sequence[float],
    cdf: Callable,
    threshold: Optional[float] = None,
    delta: float = KS_CONFIDENCE_DELTA,
) -> KsResult:
    """
    Statistique sup |F_n - F| calculée aux sauts (exacte pour F continue).
    Sans seuil déclaré, le test passe si la statistique reste sous la bande DKW.
    """
    values = _as_samples(samples)
    result = stats.kstest(values, cdf)
    eps = dkw_epsilon(values.size, delta)
    limit = eps if threshold is None else threshold
    return KsResult(
        statistic=float(result.statistic),
        n=int(values.size),
        dkw_epsilon=eps,
        delta=delta,
        threshold=limit,
        p_value=float(result.pvalue),
        passed=bool(result.statistic <= limit),
    )


def ks_two_sample(
    a: Sequence[float],
    b: Sequence[float],
    alpha: float = KS_CONFIDENCE_DELTA,
    delta: float = KS_CONFIDENCE_DELTA,
) -> KsResult:
    """Passe si la p-valeur dépasse alpha ; n = taille effective n_a n_b / (n_a + n_b)."""
    xa = _as_samples(a, "premier échantillon")
    xb = _as_samples(b, "second échantillon")
    result = stats.ks_2samp(xa, xb)
    n_eff = max(1, int(xa.size * xb.size / (xa.size + xb.size)))
    return KsResult(
        statistic=float(result.statistic),
        n=n_eff,
        dkw_epsilon=dkw_epsilon(n_eff, delta),
        delta=delta,
        threshold=alpha,
        p_value=float(result.pvalue),
        passed=bool(result.pvalue > alpha),
    )


def summarize(values: Sequence[float]) -> Dict[str, Optional[float]]:
    x = np.asarray(values, dtype=float)
    if x.size == 0:
        return {"mean": None, "variance": None, "skewness": None}
    var = float(x.var(ddof=1)) if x.size > 1 else 0.0
    skew = float(stats.skew(x)) if x.size > 2 and var > 0 else None
    return {"mean": float(x.mean()), "variance": var, "skewness": skew}
