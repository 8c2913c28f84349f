# kpzlab/jobs/tw_experiment.py

import logging
import time
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

import numpy as np
from pydantic import ValidationError
from scipy import stats

from config import KPZLAB_WORKERS
from kpzlab.errors import UsageError
from kpzlab.harness.stats import ks_one_sample, ks_two_sample, summarize
from kpzlab.harness.thresholds import Thresholds, load_thresholds
from kpzlab.jobs.observables import Observable, build_observable, sample_rows
from kpzlab.jobs.reporting import save_report, seal
from kpzlab.limits.tracy_widom import default_tracy_widom
from kpzlab.models import ExperimentReport, ExperimentSpec, KsResult, SizeSummary, Target
from kpzlab.rng import STREAM_NULL, STREAM_REFERENCE, STREAM_REFERENCE_TARGET, provenance, stream
from kpzlab.services.replica_runner import ReplicaBatch, run_replicas

logger = logging.getLogger(__name__)


def load_experiment_spec(spec: Union[ExperimentSpec, Dict[str, Any]]) -> ExperimentSpec:
    if isinstance(spec, ExperimentSpec):
        return spec
    try:
        return ExperimentSpec.model_validate(spec)
    except ValidationError as exc:
        raise UsageError(f"spécification d'expérience invalide : {exc}")


def draw_size(
    spec: ExperimentSpec, index: int, size: float, workers: Optional[int]
) -> Tuple[Observable, ReplicaBatch]:
    obs = build_observable(spec.model, spec.scaling, size, spec.params)
    batch = run_replicas(obs.draw, spec.samples, spec.seed, offset=index * spec.samples, workers=workers)
    return obs, batch


def draw_reference(
    spec: ExperimentSpec, index: int, size: float, workers: Optional[int]
) -> Tuple[Observable, ReplicaBatch]:
    ref = spec.reference
    obs = build_observable(ref.model, ref.scaling, size, ref.params)
    batch = run_replicas(
        obs.draw,
        spec.samples,
        spec.seed,
        offset=index * spec.samples,
        stream_id=STREAM_REFERENCE,
        workers=workers,
    )
    return obs, batch


def _standard_normal_cdf(x):
    return stats.norm.cdf(x)


def compare_size(
    spec: ExperimentSpec,
    size: float,
    obs: Observable,
    batch: ReplicaBatch,
    thresholds: Thresholds,
    reference: Optional[Tuple[Observable, ReplicaBatch]] = None,
) -> Tuple[SizeSummary, List[Dict[str, Any]]]:
    summary = SizeSummary(size=size, count=batch.count, failures=batch.failures, extra={"observable": obs.info})
    if batch.count == 0:
        return summary, []

    raw = batch.values
    scaled = obs.scaled(raw)
    rows = sample_rows(size, batch.replicas, raw, scaled)
    summary.mean, summary.variance, summary.skewness = summarize(scaled).values()

    smoothed = obs.smoothed(raw, batch.replicas, spec.seed)
    summary.extra["continuity_correction"] = obs.lattice
    threshold = thresholds.ks_for(spec.model, spec.threshold)

    if spec.target == Target.tracy_widom:
        summary.ks = ks_one_sample(smoothed, obs.prediction, threshold, thresholds.dkw_delta)
    elif spec.target == Target.gaussian:
        std = float(np.std(smoothed, ddof=1)) if smoothed.size > 1 else 0.0
        if std == 0.0:
            raise UsageError("échantillon dégénéré : écart-type nul, cible gaussienne impossible")
        standardized = (smoothed - smoothed.mean()) / std
        summary.ks = ks_one_sample(standardized, _standard_normal_cdf, threshold, thresholds.dkw_delta)
    elif spec.target == Target.two_sample:
        ref_obs, ref_batch = reference
        if ref_batch.count == 0:
            summary.failures = summary.failures + ref_batch.failures
            return summary, rows
        ref_values = ref_obs.smoothed(ref_batch.values, ref_batch.replicas, spec.seed, STREAM_REFERENCE_TARGET)
        summary.two_sample = ks_two_sample(smoothed, ref_values, thresholds.two_sample_p, thresholds.dkw_delta)
        summary.extra["reference"] = {
            "observable": ref_obs.info,
            "count": ref_batch.count,
            "failures": [f.model_dump() for f in ref_batch.failures],
        }
    return summary, rows


def null_control(spec: ExperimentSpec, thresholds: Thresholds) -> KsResult:
    """Tirages F_TW^{-1}(U) contre la table elle-même : KS attendu sous la bande DKW."""
    tw = default_tracy_widom()
    draws = tw.rvs(spec.samples, stream(spec.seed, 0, STREAM_NULL))
    return ks_one_sample(draws, tw.cdf, None, thresholds.dkw_delta)


def _statistic(summary: SizeSummary) -> Optional[float]:
    result = summary.ks or summary.two_sample
    return None if result is None else result.statistic


def _verdict(summary: SizeSummary) -> bool:
    result = summary.ks or summary.two_sample
    return result is not None and result.passed


def compute_trends(summaries: List[SizeSummary]) -> Dict[str, bool]:
    statistics = [_statistic(s) for s in summaries]
    if len(statistics) < 2 or any(v is None for v in statistics):
        return {}
    return {"ks_decreasing": all(b < a for a, b in zip(statistics, statistics[1:]))}


def run_tw_experiment(
    spec: Union[ExperimentSpec, Dict[str, Any]],
    workers: Optional[int] = None,
    thresholds: Optional[Thresholds] = None,
    output: Optional[Union[str, Path]] = None,
    samples_output: Optional[Union[str, Path]] = None,
) -> ExperimentReport:
    spec = load_experiment_spec(spec)
    thresholds = thresholds or load_thresholds()
    started = time.perf_counter()
    label = spec.name or spec.model.value

    summaries: List[SizeSummary] = []
    rows: List[Dict[str, Any]] = []
    per_size: Dict[str, float] = {}

    for index, size in enumerate(spec.sizes):
        tick = time.perf_counter()
        logger.info("🔄 Tirage %s, taille %g : %d replicas ...", label, size, spec.samples)
        obs, batch = draw_size(spec, index, size, workers)
        reference = draw_reference(spec, index, size, workers) if spec.target == Target.two_sample else None
        logger.info("   %d replicas valides, %d en échec.", batch.count, len(batch.failures))

        logger.info("🧹 Normalisation (%s) et comparaison (%s) ...", spec.scaling.value, spec.target.value)
        summary, size_rows = compare_size(spec, size, obs, batch, thresholds, reference)
        summaries.append(summary)
        rows.extend(size_rows)
        per_size[f"{size:g}"] = time.perf_counter() - tick
        stat = _statistic(summary)
        logger.info("   KS = %s, verdict : %s", "n/a" if stat is None else f"{stat:.4f}", _verdict(summary))

    trends = compute_trends(summaries)
    passed = _verdict(summaries[-1])
    if spec.require_decreasing:
        passed = passed and trends.get("ks_decreasing", False)

    extra: Dict[str, Any] = {}
    if spec.target == Target.tracy_widom and spec.null_control:
        control = null_control(spec, thresholds)
        extra["null_control"] = control.model_dump(mode="json", by_alias=True)
        logger.info("   contrôle nul F_TW^-1(U) : KS = %.4f (bande %.4f)", control.statistic, control.dkw_epsilon)
        passed = passed and control.passed

    report = ExperimentReport(
        kind="tw-experiment",
        spec=spec.model_dump(mode="json"),
        summaries=summaries,
        trends=trends,
        thresholds={
            "version": thresholds.version,
            "ks": thresholds.ks_for(spec.model, spec.threshold),
            "two_sample_p": thresholds.two_sample_p,
            "dkw_delta": thresholds.dkw_delta,
        },
        extra=extra,
        rng={**provenance(spec.seed), "replica_ids": "size_index * samples + i"},
        passed=passed,
    )
    seal(report, {"seconds": time.perf_counter() - started, "per_size": per_size, "workers": workers or KPZLAB_WORKERS})

    logger.info("💾 Écriture du rapport ...")
    save_report(report, output, samples_output, rows)
    logger.info("✨ Expérience %s terminée (pass=%s).", label, report.passed)
    return report
