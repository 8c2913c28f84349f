import json
from pathlib import Path

import numpy as np
import pytest

from kpzlab.errors import UsageError
from kpzlab.jobs import (
    run_exact_vs_mc,
    run_hydro_experiment,
    run_periodic_experiment,
    run_tw_experiment,
    run_wishart_identity,
)
from kpzlab.jobs.hydro_experiment import lattice_grid, profile_error
from kpzlab.jobs.periodic_experiment import crossover_constants, variance_fit
from kpzlab.limits.kpz import BROWNIAN_SCALE
from kpzlab.models import ExperimentReport

DOCS = Path(__file__).resolve().parents[1] / "docs"

SMALL_SPEC = {
    "name": "lis-smoke",
    "model": "permutation-lis",
    "sizes": [16, 64],
    "samples": 200,
    "seed": 42,
    "scaling": "depoissonized",
}


# ---- Rapports ----

def test_tw_report_is_reproducible():
    first = run_tw_experiment(SMALL_SPEC, workers=1)
    second = run_tw_experiment(SMALL_SPEC, workers=1)
    assert first.digest == second.digest
    assert [s.count for s in first.summaries] == [200, 200]
    assert first.summaries[0].ks is not None
    assert "ks_decreasing" in first.trends


def test_null_control_recorded_for_tracy_widom_target():
    report = run_tw_experiment(dict(SMALL_SPEC, sizes=[16]), workers=1)
    control = report.extra["null_control"]
    assert control["n"] == 200
    assert control["statistic"] <= control["dkw_epsilon"]
    assert control["pass"]


def test_null_control_can_be_disabled():
    report = run_tw_experiment(dict(SMALL_SPEC, sizes=[16], null_control=False), workers=1)
    assert "null_control" not in report.extra


def test_tw_digest_depends_on_seed():
    other = dict(SMALL_SPEC, seed=43)
    assert run_tw_experiment(SMALL_SPEC, workers=1).digest != run_tw_experiment(other, workers=1).digest


@pytest.mark.parametrize("workers", [4, 16])
def test_tw_report_identical_across_worker_counts(workers):
    serial = run_tw_experiment(SMALL_SPEC, workers=1)
    assert run_tw_experiment(SMALL_SPEC, workers=workers).digest == serial.digest


def test_report_files_round_trip(tmp_path):
    output = tmp_path / "report.json"
    samples = tmp_path / "samples.csv"
    report = run_tw_experiment(SMALL_SPEC, workers=1, output=output, samples_output=samples)
    reloaded = ExperimentReport.model_validate(json.loads(output.read_text(encoding="utf-8")))
    assert reloaded.digest == report.digest
    assert reloaded.deterministic_content() == report.deterministic_content()
    header = samples.read_text(encoding="utf-8").splitlines()[0]
    assert header == "size,replica,raw,scaled"


def test_gaussian_target_runs():
    spec = dict(SMALL_SPEC, target="gaussian", sizes=[64])
    report = run_tw_experiment(spec, workers=1)
    assert report.summaries[0].ks.n == 200
    assert "null_control" not in report.extra


def test_two_sample_requires_reference():
    with pytest.raises(UsageError):
        run_tw_experiment(dict(SMALL_SPEC, target="two-sample"), workers=1)


def test_hydro_target_is_not_a_tw_experiment():
    with pytest.raises(UsageError):
        run_tw_experiment(dict(SMALL_SPEC, target="hydro"), workers=1)


# ---- Profil hydrodynamique ----

def test_lattice_grid_rounds_to_sites():
    assert lattice_grid(10.0, [-1.0, -0.25, 0.0, 0.5, 1.0]) == [-10, -2, 0, 5, 10]


def test_profile_error_endpoints_pinned():
    xs = [-10, 0, 10]
    heights = np.array([10.0, 5.0, 10.0])
    result = profile_error(heights, xs, 10.0)
    assert result["sup_error"] == pytest.approx(0.0)


def test_hydro_small_run():
    report = run_hydro_experiment([50.0, 100.0], [-0.5, 0.0, 0.5], 20, seed=1, workers=1)
    assert report.kind == "hydro-experiment"
    assert len(report.summaries) == 2
    assert all(s.extra["sup_error"] < 0.3 for s in report.summaries)


def test_hydro_rejects_points_outside_light_cone():
    with pytest.raises(UsageError):
        run_hydro_experiment(10.0, [1.5], 5, workers=1)


# ---- Anneau ----

def test_variance_fit_on_linear_data():
    fit = variance_fit([1.0, 2.0, 3.0, 4.0], [2.0, 4.0, 6.0, 8.0])
    assert fit["r2"] == pytest.approx(1.0)
    assert fit["slope"] == pytest.approx(2.0)


def test_crossover_constants_use_regime_maps():
    constants = crossover_constants(4.0, 0.0, np.array([-5.0, -3.0]))
    assert constants["large_time_mean"] == pytest.approx(-4.0)
    assert constants["large_time_scale"] == pytest.approx(2.0 * BROWNIAN_SCALE)
    assert constants["variance_over_large_scale2"] == pytest.approx(2.0 / (4.0 * BROWNIAN_SCALE**2))
    assert constants["small_time_scale"] == pytest.approx(4.0 ** (1.0 / 3.0))
    assert constants["small_time_mean"] == pytest.approx(-4.0 / 4.0 ** (1.0 / 3.0))


def test_periodic_rejects_odd_period():
    with pytest.raises(UsageError):
        run_periodic_experiment([9], [1.0], 100, workers=1)


# ---- Identité de Wishart et triangle exact ----

def test_wishart_identity_rejects_bad_shape():
    with pytest.raises(UsageError):
        run_wishart_identity(1, 2, 100, workers=1)


def test_exact_vs_mc_time_zero():
    report = run_exact_vs_mc(kind="line", t=0.0, samples=200, Y=[0, 1], workers=1)
    assert report.passed
    assert report.extra["max_z"] == pytest.approx(0.0, abs=1e-6)


def test_exact_vs_mc_ring_skips_unreachable_states():
    report = run_exact_vs_mc(kind="ring", t=0.5, samples=2000, L=4, N=2, workers=1)
    assert report.extra["max_oracle_gap"] <= 1e-8
    assert report.extra["exact_mass"] == pytest.approx(1.0, abs=1e-6)


def test_exact_vs_mc_line_uses_transition_law():
    report = run_exact_vs_mc(kind="line", t=0.5, samples=2000, Y=[0, 1], workers=1)
    assert report.extra["max_oracle_gap"] <= 1e-8
    assert report.extra["overflow"] < 1e-8


@pytest.mark.slow
def test_wishart_identity_small_matrices():
    report = run_wishart_identity(3, 2, 10_000, seed=42, workers=2)
    assert report.extra["identity_p_value"] > 0.01
    assert report.extra["control_rejected"]


@pytest.mark.slow
def test_exact_vs_mc_ring_triangle():
    report = run_exact_vs_mc(kind="ring", t=1.0, samples=100_000, L=4, N=2, workers=2)
    assert report.passed, report.extra.get("offending")
    assert report.extra["max_oracle_gap"] <= 1e-8


@pytest.mark.slow
def test_exact_vs_mc_line_pair():
    report = run_exact_vs_mc(kind="line", t=0.5, samples=100_000, Y=[0, 1], workers=2)
    assert report.passed, report.extra.get("offending")


@pytest.mark.slow
def test_hydro_profile_converges():
    report = run_hydro_experiment([500.0, 1000.0, 2000.0], [-0.75, -0.5, -0.25, 0.0, 0.25, 0.5, 0.75], 100, workers=4)
    assert report.passed
    assert report.trends["sup_error_decreasing"]


@pytest.mark.slow
def test_thin_corner_universality():
    spec = {
        "model": "thin-dlpp",
        "sizes": [2000],
        "samples": 10_000,
        "scaling": "thin",
        "params": {"a": 0.3, "weights": {"kind": "plus-minus-one"}},
        "target": "two-sample",
        "reference": {
            "model": "thin-dlpp",
            "scaling": "thin",
            "params": {"a": 0.3, "weights": {"kind": "uniform-centered"}},
        },
    }
    report = run_tw_experiment(spec, workers=4)
    assert report.passed


@pytest.mark.slow
def test_poisson_lis_converges_to_tracy_widom():
    spec = json.loads((DOCS / "specs" / "poisson_lis.json").read_text(encoding="utf-8"))
    report = run_tw_experiment(spec, workers=4)
    assert [s.size for s in report.summaries] == [25.0, 100.0, 400.0]
    assert report.trends["ks_decreasing"]
    assert report.summaries[-1].ks.statistic <= 0.10
    assert report.passed


@pytest.mark.slow
def test_dlpp_height_matches_composed_prediction():
    spec = {
        "model": "exp-dlpp",
        "sizes": [500],
        "samples": 10_000,
        "scaling": "kpz-height",
        "params": {"gamma": 0.0, "tau": 0.5},
    }
    report = run_tw_experiment(spec, workers=4)
    assert report.summaries[0].ks.statistic <= 0.10


@pytest.mark.slow
def test_brownian_functional_edge_at_k25():
    spec = {"model": "brownian-dk", "sizes": [25], "samples": 2000, "scaling": "baryshnikov", "null_control": False}
    report = run_tw_experiment(spec, workers=4)
    assert report.summaries[0].ks.statistic <= 0.10


@pytest.mark.slow
def test_exp_dlpp_and_wishart_share_edge_law():
    spec = {
        "model": "exp-dlpp",
        "sizes": [400],
        "samples": 2000,
        "scaling": "square-edge",
        "target": "two-sample",
        "reference": {"model": "wishart", "scaling": "square-edge"},
    }
    report = run_tw_experiment(spec, workers=4)
    assert report.summaries[0].two_sample.passed


@pytest.mark.slow
def test_periodic_small_time_skewness_and_periodicity():
    report = run_periodic_experiment([128], [0.05], 10_000, workers=4)
    check = report.extra["skewness"]["L=128,tau=0.05"]
    assert check["raw_skewness"] < 0
    assert check["gap"] <= 0.15
    assert report.extra["periodicity"]["passed"]


@pytest.mark.slow
def test_periodic_large_time_variance_is_linear():
    report = run_periodic_experiment([32], [10.0, 20.0, 40.0], 2000, workers=4)
    assert report.extra["linear_variance"]["L=32"]["r2"] >= 0.99
