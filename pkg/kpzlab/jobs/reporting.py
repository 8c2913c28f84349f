# kpzlab/jobs/reporting.py
"""Scellement (digest) et écriture des rapports d'expérience."""

import logging
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

from kpzlab.models import ExperimentReport
from kpzlab.storage import samples_frame, write_json, write_table
from kpzlab.utils import digest, now_iso

logger = logging.getLogger(__name__)


def seal(report: ExperimentReport, timing: Dict[str, Any]) -> ExperimentReport:
    """Digest SHA-256 du contenu déterministe ; le chronométrage reste hors digest."""
    report.digest = digest(report.deterministic_content())
    report.timing = {**timing, "finished_at": now_iso()}
    return report


def report_payload(report: ExperimentReport) -> Dict[str, Any]:
    return report.model_dump(mode="json", by_alias=True)


def save_report(
    report: ExperimentReport,
    output: Optional[Union[str, Path]] = None,
    samples_output: Optional[Union[str, Path]] = None,
    rows: Optional[List[Dict[str, Any]]] = None,
) -> None:
    if output is None and samples_output is None:
        logger.info("Aucune sortie demandée pour %s.", report.kind)
        return
    if output is not None:
        write_json(output, report_payload(report))
    if samples_output is not None:
        write_table(samples_output, samples_frame(rows or []))
