# kpzlab/harness/ctmc.py
"""
Oracle par exponentielle de matrice (scipy.linalg.expm) pour le TASEP sur
espace d'états fini.

Anneau : état = (occupation mod L, nombre total de sauts J <= cap) ; la masse
au-delà du plafond va dans un état absorbant. (occupation, J) identifie un
élément de W_N^L à partir du représentant initial.
Droite : chaque particule fait au plus `jump_cap` sauts ; probabilités exactes
sur les états retenus, le reste part dans l'état absorbant.
"""

import itertools
import logging
from dataclasses import dataclass
from typing import Dict, Hashable, List, Optional, Sequence, Tuple

import numpy as np
from scipy.linalg import expm

from kpzlab.errors import ToleranceError, UsageError
from kpzlab.numerics import CTMC_MAX_STATES, CTMC_ROW_TOL

logger = logging.getLogger(__name__)

OVERFLOW = "overflow"

RingKey = Tuple[Tuple[int, ...], int]


@dataclass
class CtmcOracle:
    states: List[Hashable]
    index: Dict[Hashable, int]
    generator: np.ndarray
    transition: np.ndarray
    t: float

    def row(self, initial: Hashable) -> Dict[Hashable, float]:
        i = self.index[initial]
        return {s: float(p) for s, p in zip(self.states, self.transition[i])}

    def probability(self, initial: Hashable, final: Hashable) -> float:
        if final not in self.index:
            return 0.0
        return float(self.transition[self.index[initial], self.index[final]])

    @property
    def overflow_index(self) -> int:
        return self.index[OVERFLOW]


def _finalize(states: List[Hashable], rates: Dict[Tuple[int, int], float], t: float) -> CtmcOracle:
    n = len(states)
    q = np.zeros((n, n))
    for (i, j), rate in rates.items():
        q[i, j] += rate
        q[i, i] -= rate
    p = expm(t * q)
    drift = float(np.abs(p.sum(axis=1) - 1.0).max())
    if drift > CTMC_ROW_TOL:
        raise ToleranceError("lignes de exp(tQ) non stochastiques", drift=drift)
    return CtmcOracle(states=states, index={s: k for k, s in enumerate(states)}, generator=q, transition=p, t=t)


# ---------------------------
# Anneau
# ---------------------------

def ring_configurations(L: int, N: int) -> List[Tuple[int, ...]]:
    return list(itertools.combinations(range(L), N))


def ctmc_oracle(L: int, N: int, t: float, with_winding_cap: int) -> CtmcOracle:
    if L < 2 or not 1 <= N < L:
        raise UsageError(f"paramètres invalides : L={L}, N={N}")
    if t < 0 or with_winding_cap < 0:
        raise UsageError("t >= 0 et plafond >= 0 attendus")
    configs = ring_configurations(L, N)
    size = len(configs) * (with_winding_cap + 1) + 1
    if size > CTMC_MAX_STATES:
        raise UsageError(f"espace d'états trop grand : {size} > {CTMC_MAX_STATES}")

    states: List[Hashable] = [(c, j) for j in range(with_winding_cap + 1) for c in configs]
    states.append(OVERFLOW)
    index = {s: k for k, s in enumerate(states)}
    rates: Dict[Tuple[int, int], float] = {}
    for config in configs:
        occupied = set(config)
        for site in config:
            target = (site + 1) % L
            if target in occupied:
                continue
            moved = tuple(sorted((occupied - {site}) | {target}))
            for j in range(with_winding_cap + 1):
                src = index[(config, j)]
                dst = index[(moved, j + 1)] if j < with_winding_cap else index[OVERFLOW]
                rates[(src, dst)] = rates.get((src, dst), 0.0) + 1.0
    logger.debug("oracle CTMC anneau L=%d N=%d : %d états", L, N, len(states))
    return _finalize(states, rates, t)


def ring_state_of(X: Sequence[int], Y: Sequence[int], L: int) -> RingKey:
    """(occupation, J) avec J = sum X - sum Y."""
    return tuple(sorted(x % L for x in X)), int(sum(X) - sum(Y))


def ring_positions_of(state: RingKey, Y: Sequence[int], L: int) -> Optional[Tuple[int, ...]]:
    """
    Représentant X de W_N^L tel que X mod L = occupation et sum X = sum Y + J.
    None si aucun représentant ne convient : l'état est inaccessible depuis Y.
    """
    config, jumps = state
    x = list(config)
    target = sum(Y) + jumps
    gap = target - sum(x)
    if gap % L:
        return None
    # (x_1, ..., x_N) -> (x_2, ..., x_N, x_1 + L) augmente la somme de L
    for _ in range(abs(gap) // L):
        x = x[1:] + [x[0] + L] if gap > 0 else [x[-1] - L] + x[:-1]
    return tuple(x)


def ring_occupancy_law(oracle: CtmcOracle, Y: Sequence[int], L: int) -> Dict[Tuple[int, ...], float]:
    """Loi de l'occupation au temps t (J marginalisé), depuis Y."""
    law: Dict[Tuple[int, ...], float] = {}
    for state, p in oracle.row(ring_state_of(Y, Y, L)).items():
        if state == OVERFLOW:
            continue
        law[state[0]] = law.get(state[0], 0.0) + p
    return law


# ---------------------------
# Droite tronquée
# ---------------------------

def line_ctmc_oracle(Y: Sequence[int], t: float, jump_cap: int) -> CtmcOracle:
    Y = tuple(int(y) for y in Y)
    if not Y or any(b <= a for a, b in zip(Y, Y[1:])):
        raise UsageError("Y doit être strictement croissant et non vide")
    if t < 0 or jump_cap < 0:
        raise UsageError("t >= 0 et plafond >= 0 attendus")

    def extend(prefix: List[int], k: int):
        if k == len(Y):
            yield tuple(prefix)
            return
        low = Y[k] if not prefix else max(Y[k], prefix[-1] + 1)
        for x in range(low, Y[k] + jump_cap + 1):
            yield from extend(prefix + [x], k + 1)

    states: List[Hashable] = list(extend([], 0))
    if len(states) + 1 > CTMC_MAX_STATES:
        raise UsageError(f"espace d'états trop grand : {len(states) + 1} > {CTMC_MAX_STATES}")
    states.append(OVERFLOW)
    index = {s: k for k, s in enumerate(states)}
    rates: Dict[Tuple[int, int], float] = {}
    for state in states[:-1]:
        for k, x in enumerate(state):
            if k + 1 < len(state) and state[k + 1] == x + 1:
                continue
            if x + 1 > Y[k] + jump_cap:
                dst = index[OVERFLOW]
            else:
                dst = index[state[:k] + (x + 1,) + state[k + 1:]]
            src = index[state]
            rates[(src, dst)] = rates.get((src, dst), 0.0) + 1.0
    return _finalize(states, rates, t)


def line_transition_law(Y: Sequence[int], t: float, jump_cap: int) -> Dict[Hashable, float]:
    """Ligne de exp(tQ) issue de Y ; la masse tronquée reste sous la clé OVERFLOW."""
    oracle = line_ctmc_oracle(Y, t, jump_cap)
    return oracle.row(tuple(int(y) for y in Y))
