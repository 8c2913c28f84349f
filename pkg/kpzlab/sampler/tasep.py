# kpzlab/sampler/tasep.py
"""TASEP sur la droite (support fini) et sur l'anneau, par algorithme de Gillespie."""

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np

from kpzlab.errors import UsageError
from kpzlab.models import HeightQuery, HeightSample, LineState, RingState
from kpzlab.numerics import EVENT_CHUNK
from kpzlab.rng import Seed, as_generator
from kpzlab.sampler._kernels import run_events


@dataclass(frozen=True)
class LineRun:
    sample: HeightSample
    state: LineState
    valid: bool


@dataclass(frozen=True)
class RingRun:
    sample: HeightSample
    state: RingState


# ---------------------------
# Hauteurs
# ---------------------------

def line_height(positions: np.ndarray, anchor: int, xs: np.ndarray) -> np.ndarray:
    """h(x) = (x - anchor) + 2 #{particules > x}, anchor = position initiale la plus à droite."""
    positions = np.asarray(positions)
    above = positions.size - np.searchsorted(positions, xs, side="right")
    return (xs - anchor) + 2 * above


def ring_height(positions: np.ndarray, anchor: int, period: int, xs: np.ndarray) -> np.ndarray:
    """
    h(x) = (x - anchor) - 2 sum_n floor((x - a_n) / L) sur le revêtement universel.
    Vaut 0 au lien à droite de la particule initiale la plus à droite,
    et h(x + L) - h(x) = L - 2N.
    """
    positions = np.asarray(positions, dtype=np.int64)
    xs = np.asarray(xs, dtype=np.int64)
    wraps = np.floor_divide(xs[:, None] - positions[None, :], period).sum(axis=1)
    return (xs - anchor) - 2 * wraps


# ---------------------------
# Boucle d'événements
# ---------------------------

class _EventStream:
    """Tirages (exponentielle, uniforme) par blocs de taille fixe : résultat indépendant du découpage en segments."""

    def __init__(self, rng: np.random.Generator):
        self.rng = rng
        self.exps = np.empty(0)
        self.unifs = np.empty(0)
        self.offset = 0

    def advance(self, pos: np.ndarray, t: float, t_end: float, period: int) -> float:
        while True:
            if self.offset >= self.exps.size:
                self.exps = self.rng.standard_exponential(EVENT_CHUNK)
                self.unifs = self.rng.random(EVENT_CHUNK)
                self.offset = 0
            t, used, done = run_events(
                pos, t, t_end, period, self.exps[self.offset:], self.unifs[self.offset:]
            )
            self.offset += used
            if done:
                return t


def _grouped_queries(queries: HeightQuery, t_max: float) -> Dict[float, List[int]]:
    grouped: Dict[float, List[int]] = {}
    for x, t in queries.points:
        if t > t_max:
            raise UsageError(f"requête au temps {t} au-delà de t_max={t_max}")
        grouped.setdefault(t, []).append(x)
    return grouped


def _collect(grouped, heights_at) -> HeightSample:
    out: Dict[Tuple[int, float], int] = {}
    for t, xs in grouped.items():
        values = heights_at[t](np.asarray(xs, dtype=np.int64))
        for x, h in zip(xs, values):
            out[(x, t)] = int(h)
    queries = sorted(out)
    return HeightSample(queries=queries, values=[out[q] for q in queries])


def simulate_tasep_line(
    init: LineState,
    t_max: float,
    queries: HeightQuery,
    seed: Seed = 0,
) -> LineRun:
    """
    TASEP sur Z à support fini. Le run est marqué invalide si la particule la
    plus à gauche a bougé : c'est le seul cas où la troncature d'une condition
    step diffère du système infini sur la fenêtre interrogée.
    """
    if t_max < 0:
        raise UsageError("t_max doit être >= 0")
    initial = np.asarray(init.positions, dtype=np.int64)
    leftmost, anchor = int(initial[0]), int(initial[-1])
    for x, _ in queries.points:
        if x < leftmost - 1:
            raise UsageError(f"requête x={x} hors de la fenêtre simulée (x >= {leftmost - 1})")

    grouped = _grouped_queries(queries, t_max)
    rng = as_generator(seed)
    events = _EventStream(rng)
    pos = initial.copy()
    t = float(init.time)

    snapshots = {}
    for t_query in sorted(grouped):
        t = events.advance(pos, t, init.time + t_query, 0) if t_query > 0 else t
        snapshots[t_query] = pos.copy()
    if t < init.time + t_max:
        t = events.advance(pos, t, init.time + t_max, 0)

    heights_at = {tq: (lambda xs, p=p: line_height(p, anchor, xs)) for tq, p in snapshots.items()}
    sample = _collect(grouped, heights_at)
    state = LineState(positions=pos.tolist(), time=init.time + t_max)
    return LineRun(sample=sample, state=state, valid=bool(pos[0] == leftmost))


def simulate_tasep_ring(
    L: int,
    N: int,
    t_max: float,
    queries: HeightQuery,
    seed: Seed = 0,
    init: Optional[RingState] = None,
) -> RingRun:
    """
    TASEP sur l'anneau Z_L, positions suivies sur le revêtement universel.
    Taux total = nombre de particules dont le voisin de droite (mod L) est libre.
    """
    if not 0 < N < L:
        raise UsageError(f"N doit être dans (0, L) : N={N}, L={L}")
    if t_max < 0:
        raise UsageError("t_max doit être >= 0")
    state = init if init is not None else RingState.step(L, N)
    if state.period != L or state.count != N:
        raise UsageError("l'état initial ne correspond pas à (L, N)")

    initial = np.asarray(state.positions, dtype=np.int64)
    anchor = int(initial[-1])
    grouped = _grouped_queries(queries, t_max)
    events = _EventStream(as_generator(seed))
    pos = initial.copy()
    t = float(state.time)

    snapshots = {}
    for t_query in sorted(grouped):
        t = events.advance(pos, t, state.time + t_query, L) if t_query > 0 else t
        snapshots[t_query] = pos.copy()
    if t < state.time + t_max:
        t = events.advance(pos, t, state.time + t_max, L)

    heights_at = {tq: (lambda xs, p=p: ring_height(p, anchor, L, xs)) for tq, p in snapshots.items()}
    sample = _collect(grouped, heights_at)
    final = RingState(period=L, count=N, positions=pos.tolist(), time=state.time + t_max)
    return RingRun(sample=sample, state=final)
