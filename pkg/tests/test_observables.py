import math

import numpy as np
import pytest

from kpzlab.errors import UsageError
from kpzlab.jobs.observables import build_observable
from kpzlab.models import ExperimentModel, Scaling


def test_ulam_centering():
    obs = build_observable(ExperimentModel.poisson_lis, Scaling.ulam, 100)
    assert obs.scaled(np.array([200.0]))[0] == pytest.approx(0.0)
    assert obs.scaled(np.array([200.0 + 100 ** (1 / 3)]))[0] == pytest.approx(1.0)
    assert obs.lattice == 1.0


def test_depoissonized_centering():
    obs = build_observable(ExperimentModel.permutation_lis, Scaling.depoissonized, 64)
    assert obs.scaled(np.array([18.0]))[0] == pytest.approx(2.0 / 2.0)


def test_square_edge_scaling():
    obs = build_observable(ExperimentModel.exp_dlpp, Scaling.square_edge, 8)
    assert obs.scaled(np.array([32.0 + 2 ** (4 / 3) * 2.0]))[0] == pytest.approx(1.0)
    assert obs.lattice == 0.0


def test_baryshnikov_scaling():
    obs = build_observable(ExperimentModel.brownian_dk, Scaling.baryshnikov, 16, {"grid_m": 64})
    assert obs.scaled(np.array([8.0 + 16 ** (-1 / 6)]))[0] == pytest.approx(1.0)


def test_thin_scaling_and_lattice():
    obs = build_observable(ExperimentModel.thin_dlpp, Scaling.thin, 1000, {"a": 0.3})
    k = obs.info["k"]
    assert k == math.floor(1000**0.3)
    centre = 2 * math.sqrt(1000 * k)
    assert obs.scaled(np.array([centre]))[0] == pytest.approx(0.0)
    assert obs.lattice == 2.0


def test_height_frame_for_dlpp():
    obs = build_observable(ExperimentModel.exp_dlpp, Scaling.kpz_height, 125, {"tau": 0.5})
    assert obs.info["t"] == 125.0
    assert obs.info["x"] == 0
    # (h - tau T) / (-T^{1/3})
    assert obs.scaled(np.array([62.5 - 5.0]))[0] == pytest.approx(1.0)


def test_ring_query_bond():
    obs = build_observable(ExperimentModel.tasep_ring, Scaling.periodic_height, 16, {"tau": 0.1})
    assert obs.info["N"] == 8
    assert obs.info["bond"] == -1
    assert obs.info["t"] == pytest.approx(2 * 0.1 * 16**1.5)


def test_ring_requires_even_period():
    with pytest.raises(UsageError):
        build_observable(ExperimentModel.tasep_ring, Scaling.periodic_height, 15)


def test_incompatible_scaling_rejected():
    with pytest.raises(UsageError):
        build_observable(ExperimentModel.wishart, Scaling.ulam, 4)


def test_unknown_parameter_rejected():
    with pytest.raises(UsageError):
        build_observable(ExperimentModel.poisson_lis, Scaling.ulam, 10, {"tau": 1.0})


def test_bad_weight_law_rejected():
    with pytest.raises(UsageError):
        build_observable(ExperimentModel.thin_dlpp, Scaling.thin, 100, {"weights": {"kind": "geometric"}})


def test_square_wishart_required_for_edge_scaling():
    with pytest.raises(UsageError):
        build_observable(ExperimentModel.wishart, Scaling.square_edge, 4, {"m": 6})


def test_continuity_correction_switch():
    on = build_observable(ExperimentModel.permutation_lis, Scaling.depoissonized, 64)
    off = build_observable(ExperimentModel.permutation_lis, Scaling.depoissonized, 64, {"continuity_correction": False})
    raw = np.array([15.0, 16.0, 17.0])
    assert off.lattice == 0.0
    assert np.array_equal(off.smoothed(raw, [0, 1, 2], seed=3), off.scaled(raw))

    smoothed = on.smoothed(raw, [0, 1, 2], seed=3)
    assert np.array_equal(smoothed, on.smoothed(raw, [0, 1, 2], seed=3))
    # écart au plus d'un demi-pas du réseau, avant normalisation
    assert np.all(np.abs(smoothed - on.scaled(raw)) <= 0.5 / 64 ** (1 / 6))
