import inspect
import json
from pathlib import Path

import pytest

from kpzlab.commands.experiment import RUNNERS
from kpzlab.models import ExactRecord, ExperimentReport, ExperimentSpec

DOCS = Path(__file__).resolve().parents[1] / "docs"

SCHEMAS = {
    "experiment_spec.schema.json": ExperimentSpec,
    "experiment_report.schema.json": ExperimentReport,
    "exact_record.schema.json": ExactRecord,
}

# fichiers d'exemple hors expérience Tracy-Widom -> type de job
JOB_SPECS = {
    "hydro.json": "hydro",
    "periodic.json": "periodic",
    "wishart.json": "wishart",
    "exact_vs_mc.json": "exact-vs-mc",
}


def _load(path: Path):
    return json.loads(path.read_text(encoding="utf-8"))


@pytest.mark.parametrize("filename, model", SCHEMAS.items())
def test_published_schema_matches_model(filename, model):
    published = _load(DOCS / filename)
    generated = model.model_json_schema(by_alias=True)
    assert set(published["properties"]) == set(generated["properties"])
    assert set(published.get("required", [])) == set(generated.get("required", []))


def test_example_specs_are_valid():
    for path in sorted((DOCS / "specs").glob("*.json")):
        document = _load(path)
        kind = JOB_SPECS.get(path.name)
        if kind is None:
            ExperimentSpec.model_validate(document)
        else:
            inspect.signature(RUNNERS[kind]).bind(**document)


def test_report_reparses_under_model():
    report = ExperimentReport(kind="exact-vs-mc", spec={"t": 1.0}, extra={"max_z": 0.5})
    payload = json.loads(json.dumps(report.model_dump(mode="json", by_alias=True)))
    assert ExperimentReport.model_validate(payload) == report
