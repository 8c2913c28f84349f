import math

import numpy as np
import pytest

from kpzlab.errors import TableTooSmallError, UsageError
from kpzlab.harness import ks_two_sample
from kpzlab.jobs.observables import draw_dlpp_height, draw_line_height
from kpzlab.models import HeightQuery, LineState, RingState, WeightKind, WeightSpec
from kpzlab.rng import stream
from kpzlab.sampler import (
    diagonal_extent,
    dlpp_corner,
    dlpp_table,
    height_from_dlpp,
    hydro_extent,
    lis_length,
    points_to_permutation,
    sample_brownian_dk,
    sample_permutation_lis,
    sample_poisson_lis,
    sample_poisson_points,
    simulate_tasep_line,
    simulate_tasep_ring,
    table_from_weights,
    thin_dlpp,
    wishart_eigenvalues,
)
from kpzlab.sampler.wishart import wishart_matrix


# ---- LIS ----

def test_lis_golden_permutation():
    assert lis_length([4, 7, 5, 1, 6, 8, 2, 9, 3]) == 5


def test_lis_identity_and_reversed():
    assert lis_length(range(1, 11)) == 10
    assert lis_length(range(10, 0, -1)) == 1


def test_lis_rejects_duplicates():
    with pytest.raises(UsageError):
        lis_length([1, 2, 2, 3])


def test_poisson_lis_empty_realization():
    assert sample_poisson_lis(1e-5, 1e-5, seed=1) == 0


def test_poisson_lis_matches_permutation_of_the_cloud():
    cloud = sample_poisson_points(5.0, 5.0, seed=3)
    assert lis_length(points_to_permutation(cloud)) == sample_poisson_lis(5.0, 5.0, seed=3)


def test_poisson_lis_rejects_nonpositive_extent():
    with pytest.raises(UsageError):
        sample_poisson_lis(0.0, 1.0)


def test_poisson_lis_depends_on_area_only():
    # 4 x 9 et 6 x 6 : même aire, même loi
    wide = [sample_poisson_lis(4.0, 9.0, stream(21, r)) for r in range(3000)]
    square = [sample_poisson_lis(6.0, 6.0, stream(22, r)) for r in range(3000)]
    assert ks_two_sample(wide, square).passed


def test_ulam_mean_approaches_two_root_n():
    n = 10_000
    values = [sample_permutation_lis(n, stream(8, r)) for r in range(200)]
    # 2 - 1.7711 n^{-1/3} ~ 1.918
    assert 1.88 < np.mean(values) / math.sqrt(n) < 1.96


# ---- DLPP ----

def test_constant_weights_single_path_sum():
    table = table_from_weights(np.full((3, 4), 0.5))
    assert table.at(3, 4) == pytest.approx(0.5 * (3 + 4 - 1))


def test_corner_equals_own_weight():
    table = table_from_weights(np.array([[0.7]]))
    assert table.at(1, 1) == 0.7


def test_corner_matches_full_table():
    assert dlpp_corner(12, 9, seed=5) == pytest.approx(dlpp_table(12, 9, seed=5).at(12, 9))


def test_dlpp_rejects_empty_extent():
    with pytest.raises(UsageError):
        dlpp_table(0, 3)


def test_height_at_time_zero_is_absolute_value():
    table = dlpp_table(5, 5, seed=0)
    for x in range(-3, 4):
        assert height_from_dlpp(table, x, 0.0) == abs(x)


def test_single_site_flip():
    table = table_from_weights(np.array([[0.3]]))
    assert height_from_dlpp(table, 0, 0.5, guard=False) == 2
    with pytest.raises(TableTooSmallError):
        height_from_dlpp(table, 0, 0.5)


def test_diagonal_extent_is_large_enough():
    m, n = diagonal_extent(0, 50.0)
    for replica in range(5):
        table = dlpp_table(m, n, seed=stream(11, replica))
        h = height_from_dlpp(table, 0, 50.0)
        assert h >= 0 and h % 2 == 0


def test_last_passage_monotone_in_both_directions():
    lpt = dlpp_table(30, 20, seed=4).lpt
    assert np.all(np.diff(lpt, axis=0) > 0)
    assert np.all(np.diff(lpt, axis=1) > 0)


def test_height_nondecreasing_in_time():
    m, n = diagonal_extent(0, 40.0)
    table = dlpp_table(m, n, seed=6)
    heights = [height_from_dlpp(table, 0, t) for t in (5.0, 10.0, 20.0, 40.0)]
    assert heights == sorted(heights)


def test_thin_rejects_bad_exponent():
    with pytest.raises(UsageError):
        thin_dlpp(100, 1.2, WeightSpec(kind=WeightKind.plus_minus_one))


def test_geometric_weights_require_q():
    with pytest.raises(ValueError):
        WeightSpec(kind=WeightKind.geometric)


# ---- TASEP ----

def test_lone_particle_is_poisson_walk():
    t = 2.0
    moves = [
        simulate_tasep_line(LineState(positions=[0]), t, HeightQuery(points=[(0, t)]), stream(7, r)).state.positions[0]
        for r in range(2000)
    ]
    assert np.mean(moves) == pytest.approx(t, abs=0.15)
    assert np.var(moves) == pytest.approx(t, abs=0.3)


def test_line_heights_are_regular():
    points = [(x, t) for x in range(-10, 11) for t in (0.0, 1.0, 3.0)]
    run = simulate_tasep_line(LineState.step(30), 3.0, HeightQuery(points=points), seed=4)
    assert run.valid
    assert run.sample.is_regular()
    table = run.sample.as_dict()
    for x in range(-10, 11):
        assert table[(x, 0.0)] == abs(x)
        assert table[(x, 3.0)] >= abs(x)


def test_line_query_outside_window_rejected():
    with pytest.raises(UsageError):
        simulate_tasep_line(LineState.step(3), 1.0, HeightQuery(points=[(-10, 1.0)]))


def test_ring_height_period_shift():
    L, N = 8, 3
    points = [(x, 2.0) for x in range(-4, 12)]
    run = simulate_tasep_ring(L, N, 2.0, HeightQuery(points=points), seed=9)
    table = run.sample.as_dict()
    for x in range(-4, 4):
        assert table[(x + L, 2.0)] - table[(x, 2.0)] == L - 2 * N
    assert run.sample.is_regular()


def test_ring_single_hole_moves_left():
    L, t = 5, 2.0
    moves = []
    for r in range(2000):
        run = simulate_tasep_ring(L, L - 1, t, HeightQuery(points=[(0, t)]), stream(3, r))
        # chaque saut de particule décale le trou d'un site vers la gauche
        moves.append(sum(run.state.positions) - sum(RingState.step(L, L - 1).positions))
    assert np.mean(moves) == pytest.approx(t, abs=0.15)


def test_ring_rejects_full_lattice():
    with pytest.raises(UsageError):
        simulate_tasep_ring(4, 4, 1.0, HeightQuery(points=[(0, 1.0)]))


def test_tasep_height_matches_dlpp_coupling():
    x, t = 1, 8.0
    particles = hydro_extent(t, abs(x))
    m, n = diagonal_extent(x, t)
    tasep = [draw_line_height(particles, x, t, stream(31, r)) for r in range(1500)]
    dlpp = [draw_dlpp_height(m, n, x, t, stream(32, r)) for r in range(1500)]
    assert ks_two_sample(tasep, dlpp).passed


def test_packed_pair_waits_for_front_particle():
    t = 0.5
    stays = [
        simulate_tasep_line(LineState(positions=[0, 1]), t, HeightQuery(points=[(1, t)]), stream(13, r)).state.positions
        == [0, 1]
        for r in range(4000)
    ]
    assert np.mean(stays) == pytest.approx(math.exp(-t), abs=0.03)


def test_two_site_ring_jump_count_is_poisson():
    t = 1.5
    start = RingState.step(2, 1).positions[0]
    jumps = [
        simulate_tasep_ring(2, 1, t, HeightQuery(points=[(0, t)]), stream(17, r)).state.positions[0] - start
        for r in range(3000)
    ]
    assert np.mean(jumps) == pytest.approx(t, abs=0.1)
    assert np.var(jumps) == pytest.approx(t, abs=0.25)


# ---- Brownien et Wishart ----

def test_brownian_single_motion_variance():
    values = [sample_brownian_dk(1, 200, stream(5, r)) for r in range(4000)]
    assert np.var(values) == pytest.approx(1.0, abs=0.08)


def test_brownian_rejects_coarse_grid():
    with pytest.raises(UsageError):
        sample_brownian_dk(10, 5)


def test_brownian_two_motions_match_gue_mean():
    # D_2 a la loi de la plus grande valeur propre d'une GUE 2 x 2 : moyenne 2 / sqrt(pi)
    medium = [sample_brownian_dk(2, 400, stream(41, r)) for r in range(4000)]
    fine = [sample_brownian_dk(2, 1600, stream(42, r)) for r in range(4000)]
    assert abs(np.mean(fine) - np.mean(medium)) < 0.06
    assert np.mean(fine) == pytest.approx(2.0 / math.sqrt(math.pi), abs=0.06)


def test_wishart_spectrum_is_consistent():
    w = wishart_matrix(2, 3, seed=7)
    eigenvalues = wishart_eigenvalues(2, 3, seed=7)
    assert np.all(eigenvalues >= -1e-12)
    assert eigenvalues.sum() == pytest.approx(np.trace(w).real, abs=1e-10)


def test_wishart_one_by_one_is_exponential():
    values = [wishart_eigenvalues(1, 1, stream(2, r))[-1] for r in range(20000)]
    sigma = 1.0 / math.sqrt(len(values))
    assert abs(np.mean(values) - 1.0) < 4 * sigma


def test_wishart_rejects_tall_shape():
    with pytest.raises(UsageError):
        wishart_eigenvalues(3, 2)
