# kpzlab/jobs/wishart_identity.py

import logging
import time
from functools import partial
from pathlib import Path
from typing import Optional, Union

from config import KPZLAB_WORKERS
from kpzlab.errors import UsageError
from kpzlab.harness.stats import ks_two_sample, summarize
from kpzlab.harness.thresholds import Thresholds, load_thresholds
from kpzlab.jobs.observables import draw_dlpp_corner, draw_wishart
from kpzlab.jobs.reporting import save_report, seal
from kpzlab.models import ExperimentReport, SizeSummary
from kpzlab.rng import STREAM_REFERENCE, provenance
from kpzlab.sampler import EXP_WEIGHTS
from kpzlab.services.replica_runner import run_replicas

logger = logging.getLogger(__name__)


def run_wishart_identity(
    m: int,
    n: int,
    samples: int,
    seed: int = 42,
    control: bool = True,
    workers: Optional[int] = None,
    thresholds: Optional[Thresholds] = None,
    output: Optional[Union[str, Path]] = None,
) -> ExperimentReport:
    """
    L(m, n) en DLPP exponentielle contre lambda_max d'une Wishart complexe n x n
    (X de taille n x m). Le contrôle de puissance compare L(m + 1, n) à la même
    Wishart et doit, lui, être rejeté.
    """
    if not m >= n >= 1:
        raise UsageError(f"m >= n >= 1 attendu : m={m}, n={n}")
    if samples < 1:
        raise UsageError("samples >= 1 attendu")
    thresholds = thresholds or load_thresholds()
    alpha = thresholds.two_sample_p
    started = time.perf_counter()

    logger.info("🔄 Tirages DLPP L(%d, %d) et Wishart %dx%d : %d replicas ...", m, n, n, m, samples)
    lpp = run_replicas(partial(draw_dlpp_corner, m, n, EXP_WEIGHTS), samples, seed, workers=workers)
    wishart = run_replicas(partial(draw_wishart, n, m), samples, seed, stream_id=STREAM_REFERENCE, workers=workers)

    logger.info("🧹 Test KS à deux échantillons ...")
    identity = ks_two_sample(lpp.values, wishart.values, alpha, thresholds.dkw_delta)
    summaries = [
        SizeSummary(size=m, count=lpp.count, **summarize(lpp.values), two_sample=identity, extra={"sample": "dlpp", "n": n}),
        SizeSummary(size=m, count=wishart.count, **summarize(wishart.values), extra={"sample": "wishart", "n": n}),
    ]
    passed = identity.passed
    extra = {"identity_p_value": identity.p_value}

    if control:
        mismatched = run_replicas(
            partial(draw_dlpp_corner, m + 1, n, EXP_WEIGHTS), samples, seed, offset=samples, workers=workers
        )
        power = ks_two_sample(mismatched.values, wishart.values, alpha, thresholds.dkw_delta)
        summaries.append(
            SizeSummary(
                size=m + 1, count=mismatched.count, **summarize(mismatched.values),
                two_sample=power, extra={"sample": "dlpp-control", "n": n},
            )
        )
        # le contrôle réussit quand l'hypothèse nulle est rejetée
        extra["control_p_value"] = power.p_value
        extra["control_rejected"] = not power.passed
        passed = passed and not power.passed
        logger.info("   p identité = %.4g, p contrôle = %.4g", identity.p_value, power.p_value)

    report = ExperimentReport(
        kind="wishart-identity",
        spec={"m": m, "n": n, "samples": samples, "seed": seed, "control": control},
        summaries=summaries,
        thresholds={"version": thresholds.version, "two_sample_p": alpha},
        extra=extra,
        rng=provenance(seed),
        passed=passed,
    )
    seal(report, {"seconds": time.perf_counter() - started, "workers": workers or KPZLAB_WORKERS})

    logger.info("💾 Écriture du rapport ...")
    save_report(report, output)
    logger.info("✨ Identité de Wishart (%d, %d) : pass=%s.", m, n, report.passed)
    return report
