# kpzlab/jobs/exact_vs_mc.py
"""
Triangle de cohérence sur petits systèmes : formule exacte (déterminant
contour) = oracle CTMC (exp(tQ)) = fréquences Monte-Carlo.
"""

import logging
import math
import time
from collections import Counter
from functools import partial
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
from pydantic import ValidationError

from config import KPZLAB_WORKERS
from kpzlab.errors import UsageError
from kpzlab.exact.periodic import periodic_transition
from kpzlab.exact.schuetz import jump_cap, schuetz_transition, truncated_support
from kpzlab.harness.ctmc import OVERFLOW, ctmc_oracle, line_transition_law, ring_positions_of, ring_state_of
from kpzlab.jobs.reporting import save_report, seal
from kpzlab.models import ExperimentReport, HeightQuery, LineState, RingState
from kpzlab.numerics import EXACT_VS_MC_SIGMAS, EXACT_VS_ORACLE_TOL, POISSON_TAIL_BOUND
from kpzlab.rng import provenance
from kpzlab.sampler import simulate_tasep_line, simulate_tasep_ring
from kpzlab.services.replica_runner import run_replicas

logger = logging.getLogger(__name__)

State = Tuple[int, ...]


def ring_final_positions(L: int, N: int, Y: Sequence[int], t: float, rng: np.random.Generator) -> np.ndarray:
    init = RingState(period=L, count=N, positions=list(Y))
    run = simulate_tasep_ring(L, N, t, HeightQuery(points=[(0, t)]), rng, init=init)
    return np.asarray(run.state.positions, dtype=float)


def line_final_positions(Y: Sequence[int], t: float, rng: np.random.Generator) -> np.ndarray:
    run = simulate_tasep_line(LineState(positions=list(Y)), t, HeightQuery(points=[(Y[-1], t)]), rng)
    return np.asarray(run.state.positions, dtype=float)


def _ring_tables(L: int, N: int, Y: State, t: float) -> Tuple[Dict[State, float], Any]:
    cap = jump_cap(1, N * t)
    oracle = ctmc_oracle(L, N, t, cap)
    initial = ring_state_of(Y, Y, L)
    law: Dict[State, float] = {}
    for state, p in oracle.row(initial).items():
        if state == OVERFLOW or p <= 0.0:
            continue
        X = ring_positions_of(state, Y, L)
        # occupation incompatible avec le nombre de sauts
        if X is not None:
            law[X] = p
    return law, {"winding_cap": cap, "overflow": oracle.probability(initial, OVERFLOW)}


def _line_tables(Y: State, t: float) -> Tuple[Dict[State, float], Any]:
    states, tail = truncated_support(Y, t)
    cap = jump_cap(len(Y), t)
    law = line_transition_law(Y, t, cap)
    overflow = law.pop(OVERFLOW, 0.0)
    return {X: law.get(X, 0.0) for X in states}, {"jump_cap": cap, "tail_bound": tail, "overflow": overflow}


def _checked(build) -> State:
    try:
        return tuple(build().positions)
    except ValidationError as exc:
        raise UsageError(f"état initial invalide : {exc}")


def binomial_sigma(p: float, n: int) -> float:
    """sqrt(p(1-p)/n), plancher 1/n pour les états de probabilité quasi nulle."""
    return math.sqrt(max(p * (1.0 - p), 1.0 / n) / n)


def compare_states(
    exact: Dict[State, float], oracle: Dict[State, float], counts: Counter, n: int
) -> List[Dict[str, Any]]:
    rows = []
    for X in sorted(exact):
        p = exact[X]
        freq = counts.get(X, 0) / n
        sigma = binomial_sigma(p, n)
        ctmc = oracle.get(X)
        rows.append({
            "X": list(X),
            "exact": p,
            "ctmc": ctmc,
            "oracle_gap": None if ctmc is None else abs(p - ctmc),
            "frequency": freq,
            "sigma": sigma,
            "z": abs(p - freq) / sigma,
        })
    return rows


def run_exact_vs_mc(
    kind: str = "ring",
    t: float = 1.0,
    samples: int = 100_000,
    L: int = 4,
    N: int = 2,
    Y: Optional[Sequence[int]] = None,
    seed: int = 42,
    workers: Optional[int] = None,
    output: Optional[Union[str, Path]] = None,
) -> ExperimentReport:
    if t < 0 or samples < 1:
        raise UsageError("t >= 0 et samples >= 1 attendus")
    started = time.perf_counter()

    if kind == "ring":
        Y = _checked(lambda: RingState(period=L, count=N, positions=list(Y)) if Y is not None else RingState.step(L, N))
        logger.info("🔄 Oracle CTMC anneau L=%d N=%d t=%g ...", L, N, t)
        oracle, meta = _ring_tables(L, N, Y, t)
        draw = partial(ring_final_positions, L, N, Y, t)
        formula = partial(periodic_transition, Y=Y, t=t, L=L)
    elif kind == "line":
        Y = _checked(lambda: LineState(positions=list(Y) if Y is not None else [0, 1]))
        N = len(Y)
        logger.info("🔄 Oracle CTMC droite N=%d t=%g ...", N, t)
        oracle, meta = _line_tables(Y, t)
        draw = partial(line_final_positions, Y, t)
        formula = partial(schuetz_transition, Y=Y, t=t)
    else:
        raise UsageError(f"type inconnu : {kind} (ring | line)")

    logger.info("🔄 Monte-Carlo : %d replicas ...", samples)
    batch = run_replicas(draw, samples, seed, workers=workers)
    counts = Counter(tuple(int(v) for v in row) for row in batch.values)
    n = batch.count

    logger.info("🧹 Formule exacte et comparaison ...")
    support = {X for X, p in oracle.items() if p > POISSON_TAIL_BOUND} | set(counts)
    exact = {X: formula(X) for X in support}
    rows = compare_states(exact, oracle, counts, n) if n else []

    oracle_gap = max((r["oracle_gap"] for r in rows if r["oracle_gap"] is not None), default=0.0)
    worst = max(rows, key=lambda r: r["z"], default=None)
    passed = bool(n) and oracle_gap <= EXACT_VS_ORACLE_TOL and worst is not None and worst["z"] <= EXACT_VS_MC_SIGMAS
    extra: Dict[str, Any] = {
        **meta,
        "states": rows,
        "max_oracle_gap": oracle_gap,
        "max_z": None if worst is None else worst["z"],
        "exact_mass": float(sum(exact.values())),
        "failures": [f.model_dump() for f in batch.failures],
    }
    if not passed and worst is not None:
        extra["offending"] = worst
        logger.warning("état fautif : X=%s (exact=%.6g, fréquence=%.6g)", worst["X"], worst["exact"], worst["frequency"])

    report = ExperimentReport(
        kind="exact-vs-mc",
        spec={"kind": kind, "t": t, "samples": samples, "L": L if kind == "ring" else None, "N": N, "Y": list(Y), "seed": seed},
        thresholds={"sigmas": EXACT_VS_MC_SIGMAS, "oracle_tol": EXACT_VS_ORACLE_TOL},
        extra=extra,
        rng=provenance(seed),
        passed=passed,
    )
    seal(report, {"seconds": time.perf_counter() - started, "workers": workers or KPZLAB_WORKERS})

    logger.info("💾 Écriture du rapport ...")
    save_report(report, output)
    logger.info("✨ Triangle exact / CTMC / MC (%s) : pass=%s.", kind, report.passed)
    return report
