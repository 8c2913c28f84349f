from functools import partial

import numpy as np

from kpzlab.jobs.observables import draw_line_height, draw_permutation_lis
from kpzlab.rng import STREAM_MAIN, STREAM_REFERENCE, stream
from kpzlab.services import run_replicas


def test_results_do_not_depend_on_worker_count():
    draw = partial(draw_permutation_lis, 40)
    serial = run_replicas(draw, 24, seed=7, workers=1)
    parallel = run_replicas(draw, 24, seed=7, workers=2)
    assert serial.replicas == parallel.replicas == list(range(24))
    assert np.array_equal(serial.values, parallel.values)


def test_offset_selects_replica_ids():
    draw = partial(draw_permutation_lis, 40)
    full = run_replicas(draw, 8, seed=3, workers=1)
    tail = run_replicas(draw, 5, seed=3, offset=3, workers=1)
    assert tail.replicas == [3, 4, 5, 6, 7]
    assert np.array_equal(tail.values, full.values[3:])


def test_replica_uses_its_own_stream():
    batch = run_replicas(partial(draw_permutation_lis, 40), 3, seed=11, workers=1)
    assert batch.values[2] == draw_permutation_lis(40, stream(11, 2, STREAM_MAIN))


def test_streams_are_distinct():
    draw = partial(draw_permutation_lis, 200)
    main = run_replicas(draw, 50, seed=5, workers=1)
    reference = run_replicas(draw, 50, seed=5, stream_id=STREAM_REFERENCE, workers=1)
    assert not np.array_equal(main.values, reference.values)


def test_failures_are_reported_with_ids():
    # deux particules jusqu'à t = 50 : la particule de gauche bouge toujours
    batch = run_replicas(partial(draw_line_height, 2, 0, 50.0), 4, seed=1, workers=1)
    assert batch.count == 0
    assert [f.replica for f in batch.failures] == [0, 1, 2, 3]
    assert all(f.error == "TableTooSmallError" for f in batch.failures)
