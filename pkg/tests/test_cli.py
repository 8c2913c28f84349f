import io
import json

import numpy as np
import pandas as pd
import pytest

from kpzlab.commands import experiment as experiment_command
from kpzlab.main import _join_dashed_values, parse_and_dispatch
from kpzlab.models import ExperimentReport
from kpzlab.utils import parse_range


def _csv(text: str) -> pd.DataFrame:
    return pd.read_csv(io.StringIO(text))


def test_dashed_values_are_joined():
    argv = ["dist", "--x", "-2:4:0.5", "--method", "painleve"]
    assert _join_dashed_values(argv) == ["dist", "--x=-2:4:0.5", "--method", "painleve"]


def test_dist_csv_table(capsys):
    code = parse_and_dispatch(["--seed", "7", "dist", "--method", "fredholm", "--x", "-2:4:0.5"])
    assert code == 0
    df = _csv(capsys.readouterr().out)
    assert list(df.columns) == ["x", "F", "method", "tolerance", "seed"]
    assert len(df) == 13
    assert (df["seed"] == 7).all()
    assert (df["method"] == "nystrom").all()
    assert df["F"].is_monotonic_increasing


def test_dist_range_stops_at_table_edge(capsys):
    assert parse_and_dispatch(["dist", "--x", "7:8:0.1"]) == 0
    df = _csv(capsys.readouterr().out)
    assert len(df) == 11
    assert df["x"].iloc[-1] == 8.0


def test_parse_range_never_passes_stop():
    grid = parse_range("-12:8:0.005")
    assert grid.size == 4001
    assert grid[-1] == 8.0
    assert np.all(np.diff(grid) > 0)


def test_unknown_flag_is_usage_error(capsys):
    assert parse_and_dispatch(["dist", "--bogus"]) == 1
    assert "usage" in capsys.readouterr().err


def test_missing_subcommand_is_usage_error():
    assert parse_and_dispatch([]) == 1


def test_help_exits_cleanly():
    assert parse_and_dispatch(["--help"]) == 0


def test_describe_numerics(capsys):
    assert parse_and_dispatch(["--describe-numerics"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert "numerics" in payload
    assert payload["thresholds"]["two_sample_p"] == 0.01


def test_exact_line_record(capsys):
    code = parse_and_dispatch(["--seed", "5", "exact", "--X", "0,1", "--Y", "0,1", "--t", "0"])
    assert code == 0
    record = json.loads(capsys.readouterr().out)
    assert record["seed"] == 5
    assert record["probability"] == pytest.approx(1.0, abs=1e-10)
    assert record["N"] == 2


def test_exact_ring_requires_period():
    assert parse_and_dispatch(["exact", "--kind", "ring", "--X", "0,1", "--Y", "0,1", "--t", "1"]) == 1


def test_exact_unordered_state_is_usage_error(capsys):
    assert parse_and_dispatch(["exact", "--X", "1,0", "--Y", "0,1", "--t", "1"]) == 1
    lines = [l for l in capsys.readouterr().err.splitlines() if l.startswith("{")]
    error = json.loads(lines[-1])
    assert error["error"] == "UsageError"


def test_roots_json(capsys):
    assert parse_and_dispatch(["roots", "--L", "24", "--N", "8", "--z-abs-frac", "0.5"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert len(payload["roots"]) == 24
    assert max(payload["residuals"]) < 1e-12


def test_roots_limit_mode(capsys):
    assert parse_and_dispatch(["roots", "--N", "16", "--zeta", "0.5", "--R", "2"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["L"] == 32
    assert payload["max_distance"] < 0.15


def test_simulate_scalar_model(capsys):
    code = parse_and_dispatch(["--workers", "1", "simulate", "--model", "permutation-lis", "--n", "20", "--samples", "5"])
    assert code == 0
    df = _csv(capsys.readouterr().out)
    assert list(df.columns) == ["replica", "value", "seed"]
    assert list(df["replica"]) == [0, 1, 2, 3, 4]


def test_simulate_tasep_line_heights(capsys):
    code = parse_and_dispatch(
        ["--workers", "1", "simulate", "--model", "tasep-line", "--t", "2", "--x", "-3:3:1", "--samples", "2"]
    )
    assert code == 0
    df = _csv(capsys.readouterr().out)
    assert len(df) == 14
    assert (df["h"] >= df["x"].abs()).all()


def test_simulate_missing_parameter():
    assert parse_and_dispatch(["simulate", "--model", "wishart", "--n", "3"]) == 1


def test_experiment_missing_spec_file(tmp_path):
    assert parse_and_dispatch(["experiment", "--spec", str(tmp_path / "absent.json")]) == 1


def test_experiment_invalid_spec(tmp_path):
    path = tmp_path / "spec.json"
    path.write_text(json.dumps({"model": "wishart", "sizes": [4], "scaling": "ulam"}), encoding="utf-8")
    assert parse_and_dispatch(["experiment", "--spec", str(path)]) == 1


def test_experiment_unknown_job_argument(tmp_path):
    path = tmp_path / "spec.json"
    path.write_text(json.dumps({"m": 2, "n": 1, "samples": 10, "colour": "blue"}), encoding="utf-8")
    assert parse_and_dispatch(["experiment", "--kind", "wishart", "--spec", str(path)]) == 1


def test_experiment_acceptance_failure(tmp_path, monkeypatch, capsys):
    path = tmp_path / "spec.json"
    path.write_text(json.dumps({"model": "wishart", "sizes": [4]}), encoding="utf-8")

    def failing(spec, **kwargs):
        return ExperimentReport(kind="tw-experiment", spec=spec, passed=False)

    monkeypatch.setattr(experiment_command, "run_tw_experiment", failing)
    assert parse_and_dispatch(["experiment", "--spec", str(path)]) == 3
    report = json.loads(capsys.readouterr().out)
    assert report["passed"] is False
    assert "seed" in report["spec"]


def test_spec_seed_takes_precedence(tmp_path, monkeypatch):
    path = tmp_path / "spec.json"
    path.write_text(json.dumps({"model": "wishart", "sizes": [4], "seed": 99}), encoding="utf-8")
    seen = {}

    def recording(spec, **kwargs):
        seen.update(spec)
        return ExperimentReport(kind="tw-experiment", spec=spec, passed=True)

    monkeypatch.setattr(experiment_command, "run_tw_experiment", recording)
    assert parse_and_dispatch(["--seed", "3", "experiment", "--spec", str(path)]) == 0
    assert seen["seed"] == 99
