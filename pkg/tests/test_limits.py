import math

import numpy as np
import pytest

from kpzlab.errors import UsageError
from kpzlab.harness import dkw_epsilon, ks_one_sample
from kpzlab.limits import (
    airy,
    airy_array,
    cdf_table_on,
    d_matrix_diag,
    default_tracy_widom,
    hastings_mcleod,
    hydro_profile,
    kpz_one_point_cdf,
    kpz_rescale,
    painleve2_tw_cdf,
    tracy_widom_cdf,
    tw_argument,
)
from kpzlab.models import MultiPointSpec, ScalePoint
from kpzlab.numerics import PAINLEVE_TOL


# ---- Airy ----

def test_airy_at_origin():
    ai, aip = airy(0.0)
    assert ai == pytest.approx(3 ** (-2.0 / 3.0) / math.gamma(2.0 / 3.0), rel=1e-12)
    assert aip == pytest.approx(-(3 ** (-1.0 / 3.0)) / math.gamma(1.0 / 3.0), rel=1e-12)


def test_airy_positive_and_decreasing_on_right():
    xs = np.linspace(0.0, 10.0, 101)
    ai, _ = airy_array(xs)
    assert np.all(ai > 0)
    assert np.all(np.diff(ai) < 0)


@pytest.mark.parametrize("x", [-20.0, -5.0, -0.7, 2.0, 9.5])
def test_airy_solves_its_equation(x):
    h = 1e-4
    second = (airy(x + h)[1] - airy(x - h)[1]) / (2 * h)
    ai = airy(x)[0]
    assert abs(second - x * ai) < 1e-7 * max(1.0, abs(x))


def test_airy_domain():
    with pytest.raises(UsageError):
        airy(45.0)
    assert airy_array(np.array([50.0]))[0][0] == 0.0


# ---- Tracy-Widom ----

def test_tracy_widom_tails():
    assert tracy_widom_cdf(8.0) == pytest.approx(1.0, abs=1e-10)
    assert tracy_widom_cdf(-12.0) < 1e-8


@pytest.mark.parametrize("x", [-6.0, -3.5, -1.77, 0.0, 2.5])
def test_fredholm_and_painleve_agree(x):
    assert tracy_widom_cdf(x) == pytest.approx(painleve2_tw_cdf(x), abs=1e-8)


def test_hastings_mcleod_boundary_behaviour():
    solution = hastings_mcleod()
    ai, _ = airy(6.0)
    assert float(solution.q(6.0)) / ai == pytest.approx(1.0, abs=1e-4)


def test_painleve_refinement_is_stable():
    grid = np.linspace(-10.0, 6.0, 33)
    coarse = hastings_mcleod(PAINLEVE_TOL).cdf(grid)
    fine = hastings_mcleod(PAINLEVE_TOL / 2).cdf(grid)
    assert np.max(np.abs(coarse - fine)) < 1e-9


@pytest.mark.slow
def test_dual_constructions_agree_on_full_grid():
    grid = np.linspace(-10.0, 6.0, 100)
    nystrom = cdf_table_on(grid, "fredholm").values
    painleve = cdf_table_on(grid, "painleve").values
    assert np.max(np.abs(nystrom - painleve)) < 1e-8


def test_default_tracy_widom_table_spans_range():
    grid = default_tracy_widom().table.grid
    assert grid[0] == -12.0
    assert grid[-1] == 8.0
    assert default_tracy_widom().cdf(8.0) == pytest.approx(1.0, abs=1e-9)


def test_inverse_cdf_draws_pass_dkw_band():
    tw = default_tracy_widom()
    draws = tw.rvs(10_000, 2024)
    result = ks_one_sample(draws, tw.cdf)
    assert result.statistic <= dkw_epsilon(10_000, 0.01)
    assert np.mean(draws) == pytest.approx(-1.7711, abs=0.05)


def test_tracy_widom_moments():
    mean, variance, skewness = default_tracy_widom().moments()
    assert mean == pytest.approx(-1.7711, abs=5e-4)
    assert variance == pytest.approx(0.8132, abs=2e-3)
    assert skewness == pytest.approx(0.2241, abs=1e-2)


def test_cdf_table_monotone_and_bounded():
    table = cdf_table_on(np.arange(-10.0, 6.01, 0.5), "fredholm")
    assert table.method == "nystrom"
    assert np.all((table.values >= 0) & (table.values <= 1))
    assert np.all(np.diff(table.values) >= 0)


def test_cdf_table_rejects_out_of_range_grid():
    with pytest.raises(UsageError):
        cdf_table_on([-20.0, 0.0], "painleve")


def test_quantiles_invert_cdf():
    tw = default_tracy_widom()
    for q in (0.1, 0.5, 0.9):
        assert tw.cdf(tw.ppf(q)) == pytest.approx(q, abs=1e-5)


# ---- Profil hydrodynamique ----

def test_hydro_profile_values():
    assert hydro_profile(0.0, 4.0) == 2.0
    assert hydro_profile(4.0, 4.0) == 4.0
    assert hydro_profile(-4.0, 4.0) == 4.0
    xs = np.linspace(-8.0, 8.0, 33)
    assert np.all(hydro_profile(xs, 4.0) >= np.abs(xs))


def test_hydro_profile_requires_positive_time():
    with pytest.raises(UsageError):
        hydro_profile(0.0, 0.0)


# ---- Point fixe KPZ ----

def test_one_point_reduces_to_tracy_widom():
    cdf = default_tracy_widom().cdf
    assert kpz_one_point_cdf(ScalePoint(h=-1.2, gamma=0.0, tau=1.0), cdf) == pytest.approx(cdf(-1.2), abs=1e-14)


@pytest.mark.parametrize("alpha", [0.5, 2.0, 10.0])
def test_one_point_rescale_invariance(alpha):
    p = ScalePoint(h=-0.8, gamma=0.4, tau=0.7)
    q = kpz_rescale(p, alpha)
    assert tw_argument(q) == pytest.approx(tw_argument(p), abs=1e-12)
    cdf = default_tracy_widom().cdf
    assert kpz_one_point_cdf(q, cdf) == pytest.approx(kpz_one_point_cdf(p, cdf), abs=1e-12)


def test_rescale_examples():
    p = ScalePoint(h=1.0, gamma=-0.5, tau=2.0)
    assert kpz_rescale(p, 1.0) == p
    doubled = kpz_rescale(p, 2.0)
    assert (doubled.h, doubled.gamma, doubled.tau) == (2.0, -2.0, 16.0)
    composed = kpz_rescale(kpz_rescale(p, 2.0), 3.0)
    direct = kpz_rescale(p, 6.0)
    assert composed.h == pytest.approx(direct.h)
    assert composed.gamma == pytest.approx(direct.gamma)
    assert composed.tau == pytest.approx(direct.tau)


def test_one_point_monotone_in_height():
    cdf = default_tracy_widom().cdf
    values = [kpz_one_point_cdf(ScalePoint(h=h, gamma=0.3, tau=0.5), cdf) for h in np.linspace(-4, 3, 30)]
    assert np.all(np.diff(values) >= 0)


def test_d_matrix_diagonal():
    spec = MultiPointSpec(points=[ScalePoint(h=0.0, gamma=0.0, tau=3.0)])
    assert d_matrix_diag(0.0, spec) == [1.0, 1.0]
    entries = d_matrix_diag(1.0, spec)
    assert len(entries) == 2
    assert entries[0] == pytest.approx(math.exp(-1.0), abs=1e-14)
    assert entries[-1] == 1.0


def test_d_matrix_joint_rescale_invariance():
    points = [ScalePoint(h=0.3, gamma=-0.2, tau=1.0), ScalePoint(h=-0.5, gamma=0.1, tau=2.5)]
    spec = MultiPointSpec(points=points)
    alpha, z = 2.0, 0.4 + 0.3j
    scaled = MultiPointSpec(points=[kpz_rescale(p, alpha) for p in points])
    for a, b in zip(d_matrix_diag(z, spec), d_matrix_diag(z / alpha, scaled)):
        assert abs(a - b) < 1e-13
