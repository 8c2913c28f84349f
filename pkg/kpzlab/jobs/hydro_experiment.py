# kpzlab/jobs/hydro_experiment.py

import logging
import time
from functools import partial
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Union

import numpy as np

from config import KPZLAB_WORKERS
from kpzlab.errors import TableTooSmallError, UsageError
from kpzlab.harness.thresholds import Thresholds, load_thresholds
from kpzlab.jobs.reporting import save_report, seal
from kpzlab.limits.kpz import hydro_profile
from kpzlab.models import ExperimentModel, ExperimentReport, HeightQuery, LineState, SizeSummary
from kpzlab.rng import provenance
from kpzlab.sampler import EXP_WEIGHTS, dlpp_table, height_from_dlpp, hydro_extent, simulate_tasep_line
from kpzlab.services.replica_runner import run_replicas

logger = logging.getLogger(__name__)

HYDRO_MODELS = (ExperimentModel.exp_dlpp, ExperimentModel.tasep_line)


def _profile_from_dlpp(extent: int, xs: Sequence[int], t: float, rng: np.random.Generator) -> np.ndarray:
    table = dlpp_table(extent, extent, EXP_WEIGHTS, rng)
    return np.array([height_from_dlpp(table, x, t) for x in xs], dtype=float)


def _profile_from_tasep(particles: int, xs: Sequence[int], t: float, rng: np.random.Generator) -> np.ndarray:
    query = HeightQuery(points=[(x, t) for x in xs])
    run = simulate_tasep_line(LineState.step(particles), t, query, rng)
    if not run.valid:
        raise TableTooSmallError("table-too-small", particles=particles, t=t)
    heights = run.sample.as_dict()
    return np.array([heights[(x, t)] for x in xs], dtype=float)


def lattice_grid(T: float, grid: Sequence[float]) -> List[int]:
    """Points x/T ramenés au réseau : x = round(g T), sans doublons, triés."""
    return sorted({int(round(g * T)) for g in grid})


def profile_error(mean_heights: np.ndarray, xs: Sequence[int], T: float) -> Dict[str, Any]:
    scaled_x = np.asarray(xs, dtype=float) / T
    target = hydro_profile(scaled_x, 1.0)
    observed = mean_heights / T
    errors = np.abs(observed - target)
    return {
        "x_over_T": scaled_x.tolist(),
        "mean_h_over_T": observed.tolist(),
        "hydro": np.atleast_1d(target).tolist(),
        "sup_error": float(errors.max()),
        "argmax": float(scaled_x[int(errors.argmax())]),
    }


def run_hydro_experiment(
    T: Union[float, Sequence[float]],
    grid: Sequence[float],
    replicas: int,
    seed: int = 42,
    model: ExperimentModel = ExperimentModel.exp_dlpp,
    workers: Optional[int] = None,
    thresholds: Optional[Thresholds] = None,
    output: Optional[Union[str, Path]] = None,
) -> ExperimentReport:
    """
    Erreur sup sur la grille de |moyenne h(xT, T)/T - h_bar(x, 1)|, pour un T
    ou une suite croissante de T (tendance décroissante enregistrée).
    """
    sizes = [float(T)] if np.isscalar(T) else [float(v) for v in T]
    model = ExperimentModel(model)
    if model not in HYDRO_MODELS:
        raise UsageError(f"profil hydrodynamique non défini pour {model.value}")
    if not sizes or any(s <= 0 for s in sizes) or any(b <= a for a, b in zip(sizes, sizes[1:])):
        raise UsageError("T doit être > 0 (suite strictement croissante)")
    if replicas < 1 or not len(grid):
        raise UsageError("replicas >= 1 et grille non vide attendus")
    if any(abs(g) > 1 for g in grid):
        raise UsageError("les points x/T doivent être dans [-1, 1]")
    thresholds = thresholds or load_thresholds()
    started = time.perf_counter()

    summaries: List[SizeSummary] = []
    for index, size in enumerate(sizes):
        xs = lattice_grid(size, grid)
        extent = hydro_extent(size, max(abs(x) for x in xs))
        if model == ExperimentModel.exp_dlpp:
            draw = partial(_profile_from_dlpp, extent, xs, size)
        else:
            draw = partial(_profile_from_tasep, extent, xs, size)

        logger.info("🔄 Profil %s à T=%g : %d replicas, %d points ...", model.value, size, replicas, len(xs))
        batch = run_replicas(draw, replicas, seed, offset=index * replicas, workers=workers)
        logger.info("   %d replicas valides, %d en échec.", batch.count, len(batch.failures))

        summary = SizeSummary(size=size, count=batch.count, failures=batch.failures)
        if batch.count:
            logger.info("🧹 Moyenne et comparaison au profil de Rost ...")
            summary.extra = profile_error(batch.values.mean(axis=0), xs, size)
            logger.info("   erreur sup = %.4f", summary.extra["sup_error"])
        summaries.append(summary)

    errors = [s.extra.get("sup_error") for s in summaries]
    trends = {}
    if len(errors) > 1 and None not in errors:
        trends["sup_error_decreasing"] = all(b < a for a, b in zip(errors, errors[1:]))
    last = errors[-1]
    report = ExperimentReport(
        kind="hydro-experiment",
        spec={"T": sizes, "grid": [float(g) for g in grid], "replicas": replicas, "seed": seed, "model": model.value},
        summaries=summaries,
        trends=trends,
        thresholds={"version": thresholds.version, "hydro_sup_error": thresholds.hydro_sup_error},
        rng=provenance(seed),
        passed=last is not None and last <= thresholds.hydro_sup_error,
    )
    seal(report, {"seconds": time.perf_counter() - started, "workers": workers or KPZLAB_WORKERS})

    logger.info("💾 Écriture du rapport ...")
    save_report(report, output)
    logger.info("✨ Expérience hydrodynamique terminée (pass=%s).", report.passed)
    return report
