# kpzlab/services/replica_runner.py
"""
Fan-out des replicas Monte-Carlo.

Chaque replica tire son propre flux rng.stream(seed, id, stream) : le résultat
ne dépend ni du nombre de workers ni du découpage en lots. executor.map rend
les lots dans l'ordre de soumission, la réduction se fait donc par id croissant.
"""

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence, Tuple, Union

import numpy as np

from config import KPZLAB_WORKERS
from kpzlab.errors import KpzlabError
from kpzlab.models import ReplicaFailure
from kpzlab.rng import STREAM_MAIN, stream

logger = logging.getLogger(__name__)

Draw = Callable[[np.random.Generator], Union[float, np.ndarray]]

# lots par worker : assez pour équilibrer, assez peu pour limiter le pickling
CHUNKS_PER_WORKER = 4


@dataclass
class ReplicaBatch:
    values: np.ndarray
    replicas: List[int]
    failures: List[ReplicaFailure] = field(default_factory=list)

    @property
    def count(self) -> int:
        return len(self.replicas)


Outcome = Tuple[int, Optional[np.ndarray], Optional[ReplicaFailure]]


def _run_chunk(draw: Draw, seed: int, ids: Sequence[int], stream_id: int) -> List[Outcome]:
    out: List[Outcome] = []
    for replica in ids:
        try:
            value = np.asarray(draw(stream(seed, replica, stream_id)), dtype=float)
            out.append((replica, value, None))
        except KpzlabError as exc:
            failure = ReplicaFailure(replica=replica, error=type(exc).__name__, detail=exc.detail)
            out.append((replica, None, failure))
    return out


def _chunks(ids: List[int], workers: int) -> List[List[int]]:
    size = max(1, math.ceil(len(ids) / (workers * CHUNKS_PER_WORKER)))
    return [ids[k:k + size] for k in range(0, len(ids), size)]


def run_replicas(
    draw: Draw,
    count: int,
    seed: int,
    offset: int = 0,
    stream_id: int = STREAM_MAIN,
    workers: Optional[int] = None,
) -> ReplicaBatch:
    """
    Exécute `count` replicas d'ids offset..offset+count-1.

    `draw` doit être picklable (fonction de module ou functools.partial) dès
    que workers > 1. Les KpzlabError d'un replica sont capturées et rendues
    dans `failures`, les autres exceptions remontent.
    """
    if count < 0:
        raise ValueError("count doit être >= 0")
    workers = workers or KPZLAB_WORKERS
    ids = list(range(offset, offset + count))

    if workers == 1 or count < 2:
        outcomes = _run_chunk(draw, seed, ids, stream_id)
    else:
        chunks = _chunks(ids, workers)
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = pool.map(
                _run_chunk,
                [draw] * len(chunks),
                [seed] * len(chunks),
                chunks,
                [stream_id] * len(chunks),
            )
            outcomes = [o for part in parts for o in part]

    values, replicas, failures = [], [], []
    for replica, value, failure in outcomes:
        if failure is not None:
            logger.warning("replica %d en échec : %s (%s)", replica, failure.error, failure.detail)
            failures.append(failure)
            continue
        values.append(value)
        replicas.append(replica)

    stacked = np.stack(values) if values else np.empty(0)
    return ReplicaBatch(values=stacked, replicas=replicas, failures=failures)
