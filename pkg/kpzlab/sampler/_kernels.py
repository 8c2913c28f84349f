# kpzlab/sampler/_kernels.py
"""Boucles chaudes compilées (numba) : DP de dernier passage, patience, événements TASEP."""

import numpy as np
from numba import njit


# ---------------------------
# Dernier passage
# ---------------------------

@njit(cache=True)
def last_passage(weights):
    # bord : L(0,1) = L(1,0) = 0, -inf ailleurs (chemins depuis (1,1) uniquement)
    m, n = weights.shape
    lpt = np.empty((m, n))
    for i in range(m):
        for j in range(n):
            if i == 0 and j == 0:
                best = 0.0
            elif i == 0:
                best = lpt[i, j - 1]
            elif j == 0:
                best = lpt[i - 1, j]
            else:
                best = max(lpt[i - 1, j], lpt[i, j - 1])
            lpt[i, j] = best + weights[i, j]
    return lpt


@njit(cache=True)
def last_passage_corner(weights):
    m, n = weights.shape
    row = np.empty(n)
    for i in range(m):
        for j in range(n):
            if i == 0 and j == 0:
                best = 0.0
            elif i == 0:
                best = row[j - 1]
            elif j == 0:
                best = row[j]
            else:
                best = max(row[j], row[j - 1])
            row[j] = best + weights[i, j]
    return row[n - 1]


# ---------------------------
# Patience sorting
# ---------------------------

@njit(cache=True)
def patience_length(values):
    tops = np.empty(values.size)
    length = 0
    for v in values:
        k = np.searchsorted(tops[:length], v)
        tops[k] = v
        if k == length:
            length += 1
    return length


# ---------------------------
# TASEP (Gillespie)
# ---------------------------

@njit(cache=True)
def _movable(pos, k, period):
    n = pos.size
    if k < n - 1:
        return pos[k + 1] > pos[k] + 1
    if period == 0:
        return True
    return pos[0] + period > pos[k] + 1


@njit(cache=True)
def _add(k, mlist, mindex, count):
    if mindex[k] < 0:
        mindex[k] = count
        mlist[count] = k
        count += 1
    return count


@njit(cache=True)
def _remove(k, mlist, mindex, count):
    slot = mindex[k]
    if slot >= 0:
        last = mlist[count - 1]
        mlist[slot] = last
        mindex[last] = slot
        mindex[k] = -1
        count -= 1
    return count


@njit(cache=True)
def run_events(pos, t, t_end, period, exps, unifs):
    """
    Avance la configuration `pos` (modifiée sur place) jusqu'à t_end ou
    épuisement des tirages. period = 0 : droite ; sinon anneau (revêtement universel).
    Retourne (t, tirages consommés, terminé).
    """
    n = pos.size
    mlist = np.empty(n, dtype=np.int64)
    mindex = -np.ones(n, dtype=np.int64)
    count = 0
    for k in range(n):
        if _movable(pos, k, period):
            count = _add(k, mlist, mindex, count)

    used = 0
    while used < exps.size:
        rate = count
        dt = exps[used] / rate
        if t + dt > t_end:
            return t_end, used + 1, True
        t += dt
        slot = int(unifs[used] * rate)
        if slot >= rate:
            slot = rate - 1
        k = mlist[slot]
        pos[k] += 1
        used += 1

        if _movable(pos, k, period):
            count = _add(k, mlist, mindex, count)
        else:
            count = _remove(k, mlist, mindex, count)
        if k > 0:
            count = _add(k - 1, mlist, mindex, count)
        elif period != 0 and n > 1:
            count = _add(n - 1, mlist, mindex, count)
    return t, used, False
