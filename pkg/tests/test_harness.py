import json
import math

import numpy as np
import pytest
from scipy import stats

from kpzlab.errors import UsageError
from kpzlab.harness import (
    dkw_epsilon,
    ecdf,
    ks_one_sample,
    ks_two_sample,
    load_thresholds,
    summarize,
)
from kpzlab.harness.ctmc import (
    OVERFLOW,
    ctmc_oracle,
    line_ctmc_oracle,
    line_transition_law,
    ring_occupancy_law,
    ring_positions_of,
    ring_state_of,
)
from kpzlab.models import ExperimentModel
from kpzlab.rng import stream


# ---- Statistiques ----

def test_ecdf_single_sample_is_unit_step():
    f = ecdf([3.0])
    assert f(2.999) == 0.0
    assert f(3.0) == 1.0


def test_ecdf_ignores_input_order():
    values = np.array([0.4, -1.0, 2.5, 0.0])
    grid = np.linspace(-2, 3, 11)
    assert np.array_equal(ecdf(values)(grid), ecdf(values[::-1])(grid))


def test_dkw_epsilon_formula():
    assert dkw_epsilon(100, 0.01) == pytest.approx(math.sqrt(math.log(200.0) / 200.0))


def test_ks_one_sample_within_dkw_band():
    samples = stream(5).standard_exponential(100_000)
    result = ks_one_sample(samples, stats.expon.cdf)
    assert result.passed
    assert result.statistic <= result.dkw_epsilon


def test_ks_one_sample_flags_wrong_law():
    samples = stream(6).normal(0.5, 1.0, 5000)
    assert not ks_one_sample(samples, stats.norm.cdf).passed


def test_ks_two_sample_extremes():
    a = np.arange(50.0)
    assert ks_two_sample(a, a).statistic == 0.0
    assert ks_two_sample(a, a + 100.0).statistic == 1.0


def test_ks_two_sample_serialises_pass_alias():
    result = ks_two_sample(np.arange(10.0), np.arange(10.0))
    assert result.model_dump(by_alias=True)["pass"] is True


def test_empty_sample_rejected():
    with pytest.raises(UsageError):
        ecdf([])


def test_summarize_moments():
    out = summarize([1.0, 2.0, 3.0, 10.0])
    assert out["mean"] == pytest.approx(4.0)
    assert out["variance"] == pytest.approx(np.var([1.0, 2.0, 3.0, 10.0], ddof=1))
    assert out["skewness"] > 0
    assert summarize([]) == {"mean": None, "variance": None, "skewness": None}


# ---- Seuils ----

def test_default_thresholds():
    thresholds = load_thresholds()
    assert thresholds.ks_for(ExperimentModel.wishart) == 0.10
    assert thresholds.ks_for(ExperimentModel.wishart, 0.2) == 0.2
    assert thresholds.two_sample_p == 0.01


def test_thresholds_reject_unknown_model(tmp_path):
    payload = load_thresholds().model_dump()
    payload["ks"]["unknown-model"] = 0.1
    path = tmp_path / "thresholds.json"
    path.write_text(json.dumps(payload), encoding="utf-8")
    with pytest.raises(UsageError):
        load_thresholds(path)


def test_thresholds_missing_file(tmp_path):
    with pytest.raises(UsageError):
        load_thresholds(tmp_path / "absent.json")


# ---- Oracle CTMC ----

def test_ctmc_identity_at_time_zero():
    oracle = ctmc_oracle(4, 2, 0.0, 3)
    assert np.allclose(oracle.transition, np.eye(len(oracle.states)))


def test_ctmc_generator_rows_sum_to_zero():
    oracle = ctmc_oracle(5, 2, 0.7, 4)
    assert np.allclose(oracle.generator.sum(axis=1), 0.0)


def test_two_site_ring_closed_form():
    t = 1.0
    Y = (-1,)
    law = ring_occupancy_law(ctmc_oracle(2, 1, t, 30), Y, 2)
    assert law[(1,)] == pytest.approx((1 + math.exp(-2 * t)) / 2, abs=1e-9)
    assert law[(0,)] == pytest.approx((1 - math.exp(-2 * t)) / 2, abs=1e-9)


def test_ring_state_round_trip():
    Y = (-2, -1)
    X = (0, 3)
    state = ring_state_of(X, Y, 4)
    assert ring_positions_of(state, Y, 4) == X


def test_ring_positions_of_unreachable_state_is_none():
    # occupation {0, 2} : somme 2, or J = 0 impose une somme -3 modulo 4
    assert ring_positions_of(((0, 2), 0), (-2, -1), 4) is None


def test_line_transition_law_keeps_overflow_mass():
    law = line_transition_law((0, 1), 2.0, 2)
    assert sum(law.values()) == pytest.approx(1.0, abs=1e-12)
    assert law[OVERFLOW] > 0.0


def test_line_oracle_single_particle():
    t = 1.5
    assert line_transition_law((0,), t, 3)[(2,)] == pytest.approx(math.exp(-t) * t**2 / 2, abs=1e-10)


def test_line_oracle_overflow_is_small():
    oracle = line_ctmc_oracle((0, 1), 0.5, 10)
    assert oracle.probability((0, 1), OVERFLOW) < 1e-8
