# kpzlab/jobs/periodic_experiment.py
"""
Anneau dans le régime de relaxation (T = L^{3/2}, N = L/2).

Trois propriétés qualitatives des régimes de croisement :
  - grand tau : la variance de h(0, t) croît linéairement en t (ajustement OLS) ;
  - petit tau : asymétrie proche de celle de Tracy-Widom (h négativement asymétrique) ;
  - périodicité en gamma -> gamma + 1 (test KS à deux échantillons).
Les constantes des conjectures de croisement sont mesurées et enregistrées,
jamais testées.
"""

import logging
import time
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
import statsmodels.api as sm

from config import KPZLAB_WORKERS
from kpzlab.errors import UsageError
from kpzlab.harness.stats import ks_two_sample, summarize
from kpzlab.harness.thresholds import Thresholds, load_thresholds
from kpzlab.jobs.observables import Observable, build_observable, sample_rows
from kpzlab.jobs.reporting import save_report, seal
from kpzlab.limits.kpz import periodic_large_time_map, periodic_small_time_map
from kpzlab.limits.tracy_widom import default_tracy_widom
from kpzlab.models import ExperimentModel, ExperimentReport, Scaling, ScalePoint, SizeSummary
from kpzlab.rng import STREAM_MAIN, STREAM_REFERENCE, STREAM_REFERENCE_TARGET, provenance
from kpzlab.services.replica_runner import ReplicaBatch, run_replicas

logger = logging.getLogger(__name__)

LARGE_TAU = 10.0
SMALL_TAU = 0.1


def _pair_key(L: int, tau: float) -> str:
    return f"L={L},tau={tau:g}"


def _observable(L: int, tau: float, gamma: float) -> Observable:
    return build_observable(
        ExperimentModel.tasep_ring, Scaling.periodic_height, L, {"gamma": gamma, "tau": tau}
    )


def _draw(obs: Observable, samples: int, seed: int, offset: int, workers, stream_id: int = STREAM_MAIN) -> ReplicaBatch:
    return run_replicas(obs.draw, samples, seed, offset=offset, stream_id=stream_id, workers=workers)


def variance_fit(times: Sequence[float], variances: Sequence[float]) -> Dict[str, float]:
    """OLS var = a + b t ; renvoie pente, ordonnée et R^2."""
    X = sm.add_constant(np.asarray(times, dtype=float))
    fit = sm.OLS(np.asarray(variances, dtype=float), X).fit()
    return {"intercept": float(fit.params[0]), "slope": float(fit.params[1]), "r2": float(fit.rsquared)}


def crossover_constants(tau: float, gamma: float, scaled: np.ndarray) -> Dict[str, float]:
    """
    Moments mesurés ramenés aux deux conjectures de croisement.

    Grand tau : l'image de (h, gamma, 1) par la carte grand temps (s = tau) donne
    moyenne -tau et écart-type c sqrt(tau). Petit tau : la carte petit temps
    (eps = tau) multiplie h par tau^{1/3}.
    """
    mean = float(np.mean(scaled))
    var = float(np.var(scaled, ddof=1)) if scaled.size > 1 else 0.0

    origin = periodic_large_time_map(ScalePoint(h=0.0, gamma=gamma), tau)
    unit = periodic_large_time_map(ScalePoint(h=1.0, gamma=gamma), tau)
    large_scale = unit.h - origin.h
    small_scale = periodic_small_time_map(ScalePoint(h=1.0, gamma=gamma), tau).h
    return {
        "mean_over_tau": mean / tau,
        "large_time_mean": origin.h,
        "large_time_scale": large_scale,
        "variance_over_large_scale2": var / large_scale**2,
        "small_time_scale": small_scale,
        "small_time_mean": mean / small_scale,
        "small_time_variance": var / small_scale**2,
    }


def run_periodic_experiment(
    L_values: Sequence[int],
    taus: Sequence[float],
    samples: int,
    seed: int = 42,
    gamma: float = 0.0,
    periodicity: Optional[Tuple[int, float]] = None,
    large_tau: float = LARGE_TAU,
    small_tau: float = SMALL_TAU,
    workers: Optional[int] = None,
    thresholds: Optional[Thresholds] = None,
    output: Optional[Union[str, Path]] = None,
    samples_output: Optional[Union[str, Path]] = None,
) -> ExperimentReport:
    L_values = [int(v) for v in L_values]
    taus = [float(v) for v in taus]
    if not L_values or not taus:
        raise UsageError("au moins un L et un tau sont requis")
    if any(L < 2 or L % 2 for L in L_values):
        raise UsageError("L pair >= 2 attendu (N = L/2)")
    if any(tau <= 0 for tau in taus):
        raise UsageError("tau doit être > 0")
    if samples < 100:
        raise UsageError("samples >= 100 attendu")
    thresholds = thresholds or load_thresholds()
    periodicity = periodicity or (L_values[-1], taus[0])
    started = time.perf_counter()

    summaries: List[SizeSummary] = []
    rows: List[Dict[str, Any]] = []
    crossover: Dict[str, Any] = {}
    variances: Dict[int, List[Tuple[float, float, float]]] = {L: [] for L in L_values}
    skewness: Dict[str, Dict[str, Any]] = {}
    tw_skew = default_tracy_widom().moments()[2]

    # 1. Tirages par couple (L, tau)
    pair_index = 0
    for L in L_values:
        for tau in taus:
            obs = _observable(L, tau, gamma)
            logger.info("🔄 Anneau L=%d, tau=%g (t=%.1f) : %d replicas ...", L, tau, obs.info["t"], samples)
            batch = _draw(obs, samples, seed, pair_index * samples, workers)
            pair_index += 1
            logger.info("   %d replicas valides, %d en échec.", batch.count, len(batch.failures))

            summary = SizeSummary(size=L, count=batch.count, failures=batch.failures, extra={"tau": tau, **obs.info})
            if batch.count:
                raw = batch.values
                scaled = obs.scaled(raw)
                summary.mean, summary.variance, summary.skewness = summarize(scaled).values()
                raw_stats = summarize(raw)
                summary.extra["raw"] = raw_stats
                rows.extend(sample_rows(L, batch.replicas, raw, scaled))
                if raw_stats["variance"] is not None:
                    variances[L].append((tau, obs.info["t"], raw_stats["variance"]))
                crossover[_pair_key(L, tau)] = crossover_constants(tau, gamma, scaled)
                if tau <= small_tau and summary.skewness is not None:
                    skewness[_pair_key(L, tau)] = {
                        "raw_skewness": raw_stats["skewness"],
                        "scaled_skewness": summary.skewness,
                        "tracy_widom_skewness": tw_skew,
                        "gap": abs(summary.skewness - tw_skew),
                        "passed": bool(
                            raw_stats["skewness"] is not None
                            and raw_stats["skewness"] < 0
                            and abs(summary.skewness - tw_skew) <= thresholds.periodic_skewness_gap
                        ),
                    }
            summaries.append(summary)

    # 2. Variance linéaire dans le régime grand tau
    logger.info("🧹 Ajustements et tests de régime ...")
    linear: Dict[str, Any] = {}
    for L, points in variances.items():
        large = [(t, v) for tau, t, v in points if tau >= large_tau]
        if len(large) >= 3:
            fit = variance_fit([t for t, _ in large], [v for _, v in large])
            fit["passed"] = fit["r2"] >= thresholds.periodic_linear_r2
            linear[f"L={L}"] = fit
            logger.info("   L=%d : R^2 = %.4f", L, fit["r2"])

    # 3. Périodicité gamma -> gamma + 1, sur des replicas indépendants
    L_p, tau_p = periodicity
    base = _observable(L_p, tau_p, gamma)
    shifted = _observable(L_p, tau_p, gamma + 1.0)
    offset = pair_index * samples
    first = _draw(base, samples, seed, offset, workers, STREAM_REFERENCE)
    second = _draw(shifted, samples, seed, offset + samples, workers, STREAM_REFERENCE)
    periodic: Dict[str, Any] = {"L": L_p, "tau": tau_p, "gamma": gamma}
    if first.count and second.count:
        a = base.smoothed(first.values, first.replicas, seed, STREAM_REFERENCE_TARGET)
        b = shifted.smoothed(second.values, second.replicas, seed, STREAM_REFERENCE_TARGET)
        result = ks_two_sample(a, b, thresholds.two_sample_p, thresholds.dkw_delta)
        periodic["two_sample"] = result.model_dump(by_alias=True)
        periodic["passed"] = result.passed
    else:
        periodic["passed"] = False
    periodic["failures"] = [f.model_dump() for f in first.failures + second.failures]

    checks = [v["passed"] for v in linear.values()] + [v["passed"] for v in skewness.values()]
    checks.append(periodic["passed"])
    report = ExperimentReport(
        kind="periodic-experiment",
        spec={
            "L": L_values, "tau": taus, "samples": samples, "seed": seed, "gamma": gamma,
            "periodicity": [L_p, tau_p], "large_tau": large_tau, "small_tau": small_tau,
        },
        summaries=summaries,
        trends={f"linear_variance_{k}": v["passed"] for k, v in linear.items()},
        thresholds={
            "version": thresholds.version,
            "periodic_linear_r2": thresholds.periodic_linear_r2,
            "periodic_skewness_gap": thresholds.periodic_skewness_gap,
            "two_sample_p": thresholds.two_sample_p,
        },
        extra={"linear_variance": linear, "skewness": skewness, "periodicity": periodic, "crossover": crossover},
        rng=provenance(seed),
        passed=all(checks),
    )
    seal(report, {"seconds": time.perf_counter() - started, "workers": workers or KPZLAB_WORKERS})

    logger.info("💾 Écriture du rapport ...")
    save_report(report, output, samples_output, rows)
    logger.info("✨ Expérience périodique terminée (pass=%s).", report.passed)
    return report
