# kpzlab/jobs/observables.py
"""
Registre (modèle, scaling) -> observable : tirage brut d'un replica, centrage
et normalisation du théorème limite, loi limite prédite pour la variable
normalisée.
"""

import math
from dataclasses import dataclass, field
from functools import partial
from typing import Any, Callable, Dict, List, Optional, Sequence

import numpy as np
from pydantic import ValidationError

from kpzlab.errors import TableTooSmallError, UsageError
from kpzlab.limits.kpz import tw_argument
from kpzlab.limits.tracy_widom import default_tracy_widom
from kpzlab.models import (
    ALLOWED_SCALINGS,
    ExperimentModel,
    HeightQuery,
    LineState,
    Scaling,
    ScalePoint,
    WeightKind,
    WeightSpec,
)
from kpzlab.rng import STREAM_TARGET, stream
from kpzlab.sampler import (
    EXP_WEIGHTS,
    diagonal_extent,
    dlpp_corner,
    dlpp_table,
    height_from_dlpp,
    hydro_extent,
    sample_brownian_dk,
    sample_permutation_lis,
    sample_poisson_lis,
    sample_wishart_lmax,
    simulate_tasep_line,
    simulate_tasep_ring,
    thin_dlpp,
)
from kpzlab.services.replica_runner import Draw

DEFAULT_THIN_EXPONENT = 0.3
DEFAULT_THIN_WEIGHTS = WeightSpec(kind=WeightKind.plus_minus_one)
DEFAULT_TAU = 0.5

_COMMON = {"continuity_correction"}
ALLOWED_PARAMS: Dict[ExperimentModel, set] = {
    ExperimentModel.poisson_lis: _COMMON,
    ExperimentModel.permutation_lis: _COMMON,
    ExperimentModel.exp_dlpp: _COMMON | {"gamma", "tau"},
    ExperimentModel.tasep_line: _COMMON | {"gamma", "tau"},
    ExperimentModel.tasep_ring: _COMMON | {"gamma", "tau"},
    ExperimentModel.thin_dlpp: _COMMON | {"a", "weights"},
    ExperimentModel.brownian_dk: {"grid_m"},
    ExperimentModel.wishart: {"m"},
}


@dataclass(frozen=True)
class Observable:
    model: ExperimentModel
    scaling: Scaling
    size: float
    draw: Draw
    transform: Callable[[np.ndarray], np.ndarray]
    prediction: Callable[[np.ndarray], np.ndarray]
    lattice: float = 0.0
    info: Dict[str, Any] = field(default_factory=dict)

    def scaled(self, raw: np.ndarray) -> np.ndarray:
        return np.asarray(self.transform(np.asarray(raw, dtype=float)), dtype=float)

    def smoothed(
        self, raw: np.ndarray, replicas: Sequence[int], seed: int, jitter_stream: int = STREAM_TARGET
    ) -> np.ndarray:
        """
        Variable normalisée après correction de continuité : un uniforme sur
        (-pas/2, pas/2), tiré sur le flux `jitter_stream` du replica, est ajouté
        à la valeur brute d'un modèle à valeurs dans un réseau.
        """
        raw = np.asarray(raw, dtype=float)
        if self.lattice <= 0:
            return self.scaled(raw)
        half = self.lattice / 2.0
        jitter = np.array([stream(seed, r, jitter_stream).uniform(-half, half) for r in replicas])
        return self.scaled(raw + jitter)


# ---------------------------
# Tirages (fonctions de module : picklables)
# ---------------------------

def draw_poisson_lis(t: float, rng: np.random.Generator) -> float:
    return float(sample_poisson_lis(t, t, rng))


def draw_permutation_lis(n: int, rng: np.random.Generator) -> float:
    return float(sample_permutation_lis(n, rng))


def draw_dlpp_corner(m: int, n: int, spec: WeightSpec, rng: np.random.Generator) -> float:
    return dlpp_corner(m, n, spec, rng)


def draw_dlpp_height(m: int, n: int, x: int, t: float, rng: np.random.Generator) -> float:
    return float(height_from_dlpp(dlpp_table(m, n, EXP_WEIGHTS, rng), x, t))


def draw_line_height(particles: int, x: int, t: float, rng: np.random.Generator) -> float:
    run = simulate_tasep_line(LineState.step(particles), t, HeightQuery(points=[(x, t)]), rng)
    if not run.valid:
        raise TableTooSmallError("table-too-small", particles=particles, x=x, t=t)
    return float(run.sample.values[0])


def draw_ring_height(L: int, N: int, x: int, t: float, rng: np.random.Generator) -> float:
    run = simulate_tasep_ring(L, N, t, HeightQuery(points=[(x, t)]), rng)
    return float(run.sample.values[0])


def draw_thin(n: int, a: float, spec: WeightSpec, rng: np.random.Generator) -> float:
    return thin_dlpp(n, a, spec, rng)


def draw_brownian(k: int, grid_m, rng: np.random.Generator) -> float:
    return sample_brownian_dk(k, grid_m, rng)


def draw_wishart(n: int, m: int, rng: np.random.Generator) -> float:
    return sample_wishart_lmax(n, m, rng)


# ---------------------------
# Construction
# ---------------------------

def _as_int(size: float, name: str = "taille") -> int:
    if size != int(size) or size < 1:
        raise UsageError(f"{name} entière >= 1 attendue : {size}")
    return int(size)


def _check_params(model: ExperimentModel, params: Dict[str, Any]) -> None:
    unknown = set(params) - ALLOWED_PARAMS[model]
    if unknown:
        raise UsageError(f"paramètres inconnus pour {model.value} : {sorted(unknown)}")


def _weights(params: Dict[str, Any]) -> WeightSpec:
    raw = params.get("weights")
    if raw is None:
        return DEFAULT_THIN_WEIGHTS
    if isinstance(raw, WeightSpec):
        return raw
    try:
        return WeightSpec.model_validate(raw)
    except ValidationError as exc:
        raise UsageError(f"loi de poids invalide : {exc}")


def _weight_lattice(spec: WeightSpec) -> float:
    if spec.kind == WeightKind.plus_minus_one:
        return 2.0
    if spec.kind == WeightKind.geometric:
        return 1.0
    return 0.0


def _identity(raw: np.ndarray) -> np.ndarray:
    return raw


def _height_scaling(T: float, tau: float) -> Callable[[np.ndarray], np.ndarray]:
    return lambda raw: (raw - tau * T) / (-T ** (1.0 / 3.0))


def _tw_cdf(x: np.ndarray) -> np.ndarray:
    return default_tracy_widom().cdf(x)


def _composed_cdf(gamma: float, tau: float) -> Callable[[np.ndarray], np.ndarray]:
    """x -> F_TW(x / tau^{1/3} + gamma^2 / (4 tau^{4/3}))."""
    shift = tw_argument(ScalePoint(h=0.0, gamma=gamma, tau=tau))
    scale = tau ** (1.0 / 3.0)
    return lambda x: default_tracy_widom().cdf(np.asarray(x, dtype=float) / scale + shift)


def _height_frame(params: Dict[str, Any], T: float, period: float) -> Dict[str, Any]:
    """Point de requête (gamma T^{2/3}, 2 tau T) arrondi au réseau ; gamma effectif recalculé."""
    gamma = float(params.get("gamma", 0.0))
    tau = float(params.get("tau", DEFAULT_TAU))
    if not tau > 0:
        raise UsageError("tau doit être > 0")
    x = int(round(gamma * period))
    return {"T": T, "t": 2.0 * tau * T, "x": x, "gamma": gamma, "gamma_effective": x / period, "tau": tau}


def build_observable(
    model: ExperimentModel,
    scaling: Scaling,
    size: float,
    params: Optional[Dict[str, Any]] = None,
) -> Observable:
    params = dict(params or {})
    model, scaling = ExperimentModel(model), Scaling(scaling)
    if scaling not in ALLOWED_SCALINGS[model]:
        raise UsageError(f"scaling {scaling.value} incompatible avec le modèle {model.value}")
    _check_params(model, params)
    correct = bool(params.get("continuity_correction", True))

    info: Dict[str, Any] = {}
    lattice = 0.0
    prediction: Callable = _tw_cdf

    if model == ExperimentModel.poisson_lis:
        t = float(size)
        draw = partial(draw_poisson_lis, t)
        transform = _identity if scaling == Scaling.identity else (lambda raw: (raw - 2.0 * t) / t ** (1.0 / 3.0))
        lattice = 1.0

    elif model == ExperimentModel.permutation_lis:
        n = _as_int(size)
        draw = partial(draw_permutation_lis, n)
        transform = _identity if scaling == Scaling.identity else (
            lambda raw: (raw - 2.0 * math.sqrt(n)) / n ** (1.0 / 6.0)
        )
        lattice = 1.0

    elif model == ExperimentModel.exp_dlpp and scaling == Scaling.kpz_height:
        frame = _height_frame(params, float(size), float(size) ** (2.0 / 3.0))
        m, n = diagonal_extent(frame["x"], frame["t"])
        draw = partial(draw_dlpp_height, m, n, frame["x"], frame["t"])
        T, tau = frame["T"], frame["tau"]
        transform = _height_scaling(T, tau)
        prediction = _composed_cdf(frame["gamma_effective"], tau)
        lattice = 2.0
        info = {**frame, "table": [m, n]}

    elif model == ExperimentModel.exp_dlpp:
        n = _as_int(size)
        draw = partial(draw_dlpp_corner, n, n, EXP_WEIGHTS)
        transform = _identity if scaling == Scaling.identity else (
            lambda raw: (raw - 4.0 * n) / (2.0 ** (4.0 / 3.0) * n ** (1.0 / 3.0))
        )

    elif model == ExperimentModel.tasep_line:
        frame = _height_frame(params, float(size), float(size) ** (2.0 / 3.0))
        particles = hydro_extent(frame["t"], abs(frame["x"]))
        draw = partial(draw_line_height, particles, frame["x"], frame["t"])
        T, tau = frame["T"], frame["tau"]
        transform = _identity if scaling == Scaling.identity else _height_scaling(T, tau)
        prediction = _composed_cdf(frame["gamma_effective"], tau)
        lattice = 2.0
        info = {**frame, "particles": particles}

    elif model == ExperimentModel.tasep_ring:
        L = _as_int(size, "période L")
        if L % 2:
            raise UsageError(f"L pair attendu (densité 1/2) : L={L}")
        T = float(L) ** 1.5
        frame = _height_frame(params, T, float(L))
        # le pas de la condition initiale {-N, ..., -1} est sur la liaison -1
        x = frame["x"] - 1
        draw = partial(draw_ring_height, L, L // 2, x, frame["t"])
        tau = frame["tau"]
        transform = _identity if scaling == Scaling.identity else _height_scaling(T, tau)
        # petit tau : approximation par le point fixe KPZ
        prediction = _composed_cdf(frame["gamma_effective"], tau)
        lattice = 2.0
        info = {**frame, "L": L, "N": L // 2, "bond": x}

    elif model == ExperimentModel.thin_dlpp:
        n = _as_int(size)
        a = float(params.get("a", DEFAULT_THIN_EXPONENT))
        spec = _weights(params)
        k = max(1, int(math.floor(n**a)))
        draw = partial(draw_thin, n, a, spec)
        transform = _identity if scaling == Scaling.identity else (
            lambda raw: (raw - 2.0 * math.sqrt(n * k)) / (math.sqrt(n) * k ** (-1.0 / 6.0))
        )
        lattice = _weight_lattice(spec)
        info = {"a": a, "k": k, "weights": spec.model_dump(mode="json")}

    elif model == ExperimentModel.brownian_dk:
        k = _as_int(size, "k")
        grid_m = params.get("grid_m")
        draw = partial(draw_brownian, k, None if grid_m is None else int(grid_m))
        transform = _identity if scaling == Scaling.identity else (
            lambda raw: (raw - 2.0 * math.sqrt(k)) * k ** (1.0 / 6.0)
        )
        info = {"grid_m": grid_m}

    elif model == ExperimentModel.wishart:
        n = _as_int(size)
        m = int(params.get("m", n))
        if scaling == Scaling.square_edge and m != n:
            raise UsageError("square-edge exige une matrice carrée (m = n)")
        draw = partial(draw_wishart, n, m)
        transform = _identity if scaling == Scaling.identity else (
            lambda raw: (raw - 4.0 * n) / (2.0 ** (4.0 / 3.0) * n ** (1.0 / 3.0))
        )
        info = {"m": m}

    else:
        raise UsageError(f"modèle inconnu : {model}")

    return Observable(
        model=model,
        scaling=scaling,
        size=float(size),
        draw=draw,
        transform=transform,
        prediction=prediction,
        lattice=lattice if correct else 0.0,
        info=info,
    )


def sample_rows(size: float, replicas: List[int], raw: np.ndarray, scaled: np.ndarray) -> List[Dict[str, Any]]:
    return [
        {"size": size, "replica": r, "raw": float(v), "scaled": float(s)}
        for r, v, s in zip(replicas, raw, scaled)
    ]
