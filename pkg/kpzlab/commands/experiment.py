# kpzlab/commands/experiment.py
"""
Sous-commande `experiment` : lance une expérience décrite par un fichier JSON.

--kind tw    : le fichier est une ExperimentSpec (modèle, tailles, scaling, cible).
autres kinds : le fichier contient les arguments nommés du job correspondant.
La graine du fichier, si présente, prime sur --seed / KPZLAB_SEED.
"""

import inspect
import logging
import sys
from typing import Any, Dict

from kpzlab.errors import AcceptanceError, UsageError
from kpzlab.harness.thresholds import load_thresholds
from kpzlab.jobs import (
    run_exact_vs_mc,
    run_hydro_experiment,
    run_periodic_experiment,
    run_tw_experiment,
    run_wishart_identity,
)
from kpzlab.jobs.reporting import report_payload
from kpzlab.models import ExperimentReport
from kpzlab.storage import dump_json, read_json

logger = logging.getLogger(__name__)

RUNNERS = {
    "hydro": run_hydro_experiment,
    "periodic": run_periodic_experiment,
    "wishart": run_wishart_identity,
    "exact-vs-mc": run_exact_vs_mc,
}


def register(subparsers) -> None:
    parser = subparsers.add_parser("experiment", help="expérience de convergence, rapport JSON")
    parser.add_argument("--spec", required=True, help="fichier JSON de l'expérience")
    parser.add_argument("--kind", choices=["tw", *RUNNERS], default="tw")
    parser.add_argument("--samples-output", default=None, help="échantillons bruts (csv ou parquet)")
    parser.add_argument("--thresholds", default=None, help="fichier de seuils (défaut : thresholds.json du paquet)")
    parser.set_defaults(handler=run)


def _read_spec(path: str) -> Dict[str, Any]:
    try:
        document = read_json(path)
    except OSError as exc:
        raise UsageError(f"fichier d'expérience illisible : {exc}")
    except ValueError as exc:
        raise UsageError(f"JSON invalide dans {path} : {exc}")
    if not isinstance(document, dict):
        raise UsageError(f"{path} doit contenir un objet JSON")
    return document


def _run_kind(args, document: Dict[str, Any], thresholds) -> ExperimentReport:
    document.setdefault("seed", args.seed)
    if args.kind == "tw":
        return run_tw_experiment(
            document,
            workers=args.workers,
            thresholds=thresholds,
            output=args.output,
            samples_output=args.samples_output,
        )

    runner = RUNNERS[args.kind]
    kwargs = dict(document, workers=args.workers, output=args.output)
    if args.kind != "exact-vs-mc":
        kwargs["thresholds"] = thresholds
    if args.kind == "periodic":
        kwargs["samples_output"] = args.samples_output
    try:
        inspect.signature(runner).bind(**kwargs)
    except TypeError as exc:
        raise UsageError(f"arguments invalides pour {args.kind} : {exc}")
    return runner(**kwargs)


def run(args) -> int:
    document = _read_spec(args.spec)
    thresholds = load_thresholds(args.thresholds)
    report = _run_kind(args, document, thresholds)

    if args.output is None:
        sys.stdout.write(dump_json(report_payload(report)) + "\n")
    if not report.passed:
        raise AcceptanceError(
            f"expérience {report.kind} en échec",
            digest=report.digest,
            trends=report.trends,
        )
    return 0
