# kpzlab/commands/simulate.py
import logging
from functools import partial
from typing import Any, Dict, List, Tuple

import numpy as np
from pydantic import ValidationError

from kpzlab.commands.output import emit, parse_list
from kpzlab.errors import TableTooSmallError, UsageError
from kpzlab.harness.stats import summarize
from kpzlab.jobs.observables import (
    draw_brownian,
    draw_dlpp_corner,
    draw_permutation_lis,
    draw_poisson_lis,
    draw_thin,
    draw_wishart,
)
from kpzlab.models import HeightQuery, LineState, WeightSpec
from kpzlab.numerics import DEFAULT_SAMPLES
from kpzlab.sampler.lpp import hydro_extent
from kpzlab.sampler.tasep import simulate_tasep_line, simulate_tasep_ring
from kpzlab.services.replica_runner import run_replicas
from kpzlab.utils import parse_range

logger = logging.getLogger(__name__)

MODELS = [
    "tasep-line",
    "tasep-ring",
    "dlpp",
    "poisson-lis",
    "permutation-lis",
    "thin-dlpp",
    "brownian-dk",
    "wishart",
]


def register(subparsers) -> None:
    parser = subparsers.add_parser("simulate", help="tirages Monte-Carlo d'un modèle")
    parser.add_argument("--model", choices=MODELS, required=True)
    parser.add_argument("--samples", type=int, default=None, help=f"nombre de replicas (défaut {DEFAULT_SAMPLES}, 1 pour TASEP)")
    # TASEP
    parser.add_argument("--x", default=None, help="positions interrogées, a:b:pas ou liste")
    parser.add_argument("--times", default=None, help="temps interrogés, liste a,b,c")
    parser.add_argument("--t", type=float, default=None, help="temps (TASEP) ou intensité (poisson-lis)")
    parser.add_argument("--L", type=int, default=None)
    parser.add_argument("--N", type=int, default=None, help="particules (anneau) ; sur la droite : taille de la troncature")
    parser.add_argument("--n", type=int, default=None)
    parser.add_argument("--m", type=int, default=None)
    parser.add_argument("--a", type=float, default=0.3, help="exposant du coin mince k = floor(n^a)")
    parser.add_argument("--weights", default="exp", help="exp | geometric | plus-minus-one | uniform-centered | gaussian")
    parser.add_argument("--q", type=float, default=None)
    parser.add_argument("--sigma", type=float, default=None)
    parser.add_argument("--grid-m", type=int, default=None, help="pas de grille du mouvement brownien")
    parser.set_defaults(handler=run)


# ---------------------------
# Tirages TASEP (profils complets, fonctions de module : picklables)
# ---------------------------

def draw_line_profile(particles: int, points: Tuple[Tuple[int, float], ...], rng: np.random.Generator) -> np.ndarray:
    queries = HeightQuery(points=list(points))
    run = simulate_tasep_line(LineState.step(particles), max(queries.times), queries, rng)
    if not run.valid:
        raise TableTooSmallError("table-too-small", particles=particles)
    return np.asarray(run.sample.values, dtype=float)


def draw_ring_profile(L: int, N: int, points: Tuple[Tuple[int, float], ...], rng: np.random.Generator) -> np.ndarray:
    queries = HeightQuery(points=list(points))
    run = simulate_tasep_ring(L, N, max(queries.times), queries, rng)
    return np.asarray(run.sample.values, dtype=float)


def _require(args, *names: str) -> None:
    missing = [f"--{n.replace('_', '-')}" for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"{args.model} exige {', '.join(missing)}")


def _range(text: str) -> np.ndarray:
    try:
        return parse_range(text)
    except ValueError as exc:
        raise UsageError(str(exc))


def _query_points(xs, times) -> Tuple[Tuple[int, float], ...]:
    # ordre de HeightSample : tri par (x, t)
    return tuple(sorted((int(x), float(t)) for x in xs for t in times))


def _times(args) -> List[float]:
    if args.times is not None:
        return parse_list(args.times, float)
    _require(args, "t")
    return [args.t]


def _weight_spec(args) -> WeightSpec:
    try:
        return WeightSpec(kind=args.weights, q=args.q, sigma=args.sigma)
    except ValidationError as exc:
        raise UsageError(f"loi de poids invalide : {exc}")


def _height_draw(args):
    times = _times(args)
    if args.model == "tasep-line":
        xs = _range(args.x) if args.x is not None else np.arange(-int(max(times)), int(max(times)) + 1)
        particles = args.N or hydro_extent(max(times), int(np.abs(xs).max()))
        if xs.min() < -particles:
            raise UsageError(f"x={int(xs.min())} hors de la fenêtre simulée (x >= {-particles})")
        points = _query_points(xs, times)
        return partial(draw_line_profile, particles, points), points, {"particles": particles}

    _require(args, "L", "N")
    xs = _range(args.x) if args.x is not None else np.arange(args.L)
    points = _query_points(xs, times)
    return partial(draw_ring_profile, args.L, args.N, points), points, {"L": args.L, "N": args.N}


def _scalar_draw(args):
    if args.model == "poisson-lis":
        _require(args, "t")
        return partial(draw_poisson_lis, args.t), {"t": args.t}
    if args.model == "permutation-lis":
        _require(args, "n")
        return partial(draw_permutation_lis, args.n), {"n": args.n}
    if args.model == "dlpp":
        _require(args, "m", "n")
        spec = _weight_spec(args)
        return partial(draw_dlpp_corner, args.m, args.n, spec), {"m": args.m, "n": args.n, "weights": spec.model_dump(mode="json")}
    if args.model == "thin-dlpp":
        _require(args, "n")
        spec = _weight_spec(args)
        return partial(draw_thin, args.n, args.a, spec), {"n": args.n, "a": args.a, "weights": spec.model_dump(mode="json")}
    if args.model == "brownian-dk":
        _require(args, "n")
        return partial(draw_brownian, args.n, args.grid_m), {"k": args.n, "grid_m": args.grid_m}
    _require(args, "n", "m")
    return partial(draw_wishart, args.n, args.m), {"n": args.n, "m": args.m}


def run(args) -> int:
    if args.model in ("tasep-line", "tasep-ring"):
        return _run_heights(args)

    samples = DEFAULT_SAMPLES if args.samples is None else args.samples
    if samples < 1:
        raise UsageError("--samples doit être >= 1")
    draw, params = _scalar_draw(args)
    logger.info("🔄 %s : %d replicas", args.model, samples)
    batch = run_replicas(draw, samples, args.seed, workers=args.workers)

    rows = [{"replica": r, "value": float(v)} for r, v in zip(batch.replicas, batch.values)]
    payload: Dict[str, Any] = {
        "model": args.model,
        "params": params,
        "samples": samples,
        "summary": summarize(batch.values),
        "values": [float(v) for v in batch.values],
        "failures": [f.model_dump() for f in batch.failures],
    }
    emit(args, payload, rows, default_format="csv")
    return 0


def _run_heights(args) -> int:
    samples = 1 if args.samples is None else args.samples
    if samples < 1:
        raise UsageError("--samples doit être >= 1")
    draw, points, params = _height_draw(args)
    logger.info("🔄 %s : %d replicas, %d requêtes", args.model, samples, len(points))
    batch = run_replicas(draw, samples, args.seed, workers=args.workers)

    rows = [
        {"replica": r, "x": x, "t": t, "h": int(h)}
        for r, values in zip(batch.replicas, batch.values)
        for (x, t), h in zip(points, values)
    ]
    payload = {
        "model": args.model,
        "params": params,
        "samples": samples,
        "heights": rows,
        "failures": [f.model_dump() for f in batch.failures],
    }
    emit(args, payload, rows, default_format="csv")
    return 0
