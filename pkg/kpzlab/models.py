from typing import Optional, List, Dict, Any, Tuple
from typing import Annotated
from enum import Enum

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


# ---- Poids DLPP ----

class WeightKind(str, Enum):
    exp = "exp"
    geometric = "geometric"
    plus_minus_one = "plus-minus-one"
    uniform_centered = "uniform-centered"
    gaussian = "gaussian"


class WeightSpec(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)

    kind: WeightKind = WeightKind.exp
    q: Optional[Annotated[float, Field(gt=0, lt=1)]] = None
    sigma: Optional[Annotated[float, Field(gt=0)]] = None

    @model_validator(mode="after")
    def check_parameters(self) -> "WeightSpec":
        if self.kind == WeightKind.geometric and self.q is None:
            raise ValueError("geometric exige le paramètre q dans (0, 1)")
        if self.kind == WeightKind.gaussian and self.sigma is None:
            raise ValueError("gaussian exige le paramètre sigma > 0")
        return self

    @property
    def nonnegative(self) -> bool:
        return self.kind in (WeightKind.exp, WeightKind.geometric)


# ---- États TASEP ----

def _check_strictly_increasing(positions: List[int]) -> List[int]:
    if not positions:
        raise ValueError("au moins une particule est requise")
    for a, b in zip(positions, positions[1:]):
        if b <= a:
            raise ValueError("les positions doivent être strictement croissantes (exclusion)")
    return positions


class LineState(BaseModel):
    model_config = ConfigDict(extra="forbid")

    positions: List[int]
    time: Annotated[float, Field(ge=0)] = 0.0

    @field_validator("positions")
    @classmethod
    def validate_positions(cls, v: List[int]) -> List[int]:
        return _check_strictly_increasing(v)

    @classmethod
    def step(cls, n: int) -> "LineState":
        """Condition step tronquée : n particules sur {-n+1, ..., 0}."""
        if n < 1:
            raise ValueError("n doit être >= 1")
        return cls(positions=list(range(-n + 1, 1)))


class RingState(BaseModel):
    model_config = ConfigDict(extra="forbid")

    period: Annotated[int, Field(ge=2)]
    count: Annotated[int, Field(ge=1)]
    positions: List[int]
    time: Annotated[float, Field(ge=0)] = 0.0

    @model_validator(mode="after")
    def check_representative(self) -> "RingState":
        if self.count >= self.period:
            raise ValueError("N doit vérifier 1 <= N < L")
        if len(self.positions) != self.count:
            raise ValueError("le nombre de positions doit valoir N")
        _check_strictly_increasing(self.positions)
        if self.positions[-1] - self.positions[0] >= self.period:
            raise ValueError("représentant hors de W_N^L : a_N - a_1 doit être < L")
        return self

    @classmethod
    def step(cls, period: int, count: int) -> "RingState":
        """Particules sur {L-N, ..., L-1}, représentées par {-N, ..., -1}."""
        return cls(period=period, count=count, positions=list(range(-count, 0)))


# ---- Hauteurs ----

class HeightQuery(BaseModel):
    model_config = ConfigDict(extra="forbid")

    points: List[Tuple[int, Annotated[float, Field(ge=0)]]] = Field(min_length=1)

    @classmethod
    def grid(cls, xs, t: float) -> "HeightQuery":
        return cls(points=[(int(x), float(t)) for x in xs])

    @property
    def times(self) -> List[float]:
        return sorted({t for _, t in self.points})


class HeightSample(BaseModel):
    model_config = ConfigDict(extra="forbid")

    queries: List[Tuple[int, float]]
    values: List[int]

    @model_validator(mode="after")
    def check_lengths(self) -> "HeightSample":
        if len(self.queries) != len(self.values):
            raise ValueError("queries et values doivent avoir la même longueur")
        return self

    def as_dict(self) -> Dict[Tuple[int, float], int]:
        return dict(zip(self.queries, self.values))

    def is_regular(self) -> bool:
        """|h(x+1,t) - h(x,t)| = 1 et h(x,.) croissante, sur les paires présentes."""
        table = self.as_dict()
        for (x, t), h in table.items():
            right = table.get((x + 1, t))
            if right is not None and abs(right - h) != 1:
                return False
            later = [v for (y, s), v in table.items() if y == x and s > t]
            if any(v < h for v in later):
                return False
        return True


# ---- Limites ----

class ScalePoint(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)

    h: float
    gamma: float = 0.0
    tau: Annotated[float, Field(gt=0)] = 1.0


class MultiPointSpec(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)

    points: List[ScalePoint] = Field(min_length=1)

    @property
    def m(self) -> int:
        return len(self.points)


# ---- Expériences ----

class ExperimentModel(str, Enum):
    poisson_lis = "poisson-lis"
    permutation_lis = "permutation-lis"
    exp_dlpp = "exp-dlpp"
    tasep_line = "tasep-line"
    tasep_ring = "tasep-ring"
    thin_dlpp = "thin-dlpp"
    brownian_dk = "brownian-dk"
    wishart = "wishart"


class Scaling(str, Enum):
    ulam = "ulam"
    depoissonized = "depoissonized"
    kpz_height = "kpz-height"
    square_edge = "square-edge"
    thin = "thin"
    baryshnikov = "baryshnikov"
    periodic_height = "periodic-height"
    identity = "identity"


class Target(str, Enum):
    tracy_widom = "tracy-widom"
    gaussian = "gaussian"
    two_sample = "two-sample"
    hydro = "hydro"


ALLOWED_SCALINGS: Dict[ExperimentModel, set] = {
    ExperimentModel.poisson_lis: {Scaling.ulam, Scaling.identity},
    ExperimentModel.permutation_lis: {Scaling.depoissonized, Scaling.identity},
    ExperimentModel.exp_dlpp: {Scaling.kpz_height, Scaling.square_edge, Scaling.identity},
    ExperimentModel.tasep_line: {Scaling.kpz_height, Scaling.identity},
    ExperimentModel.tasep_ring: {Scaling.periodic_height, Scaling.identity},
    ExperimentModel.thin_dlpp: {Scaling.thin, Scaling.identity},
    ExperimentModel.brownian_dk: {Scaling.baryshnikov, Scaling.identity},
    ExperimentModel.wishart: {Scaling.square_edge, Scaling.identity},
}


class ReferenceSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")

    model: ExperimentModel
    scaling: Scaling = Scaling.identity
    params: Dict[str, Any] = Field(default_factory=dict)


class ExperimentSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")

    name: Optional[str] = None
    model: ExperimentModel
    sizes: List[float] = Field(min_length=1)
    samples: Annotated[int, Field(ge=100)] = 10_000
    seed: Annotated[int, Field(ge=0, lt=2**64)] = 42
    scaling: Scaling = Scaling.identity
    target: Target = Target.tracy_widom
    params: Dict[str, Any] = Field(default_factory=dict)
    reference: Optional[ReferenceSpec] = None
    threshold: Optional[Annotated[float, Field(gt=0, le=1)]] = None
    require_decreasing: bool = False
    # cible tracy-widom : KS de tirages par quantile inverse contre la même table
    null_control: bool = True

    @field_validator("sizes")
    @classmethod
    def validate_sizes(cls, v: List[float]) -> List[float]:
        if any(s <= 0 for s in v):
            raise ValueError("les tailles doivent être > 0")
        if any(b <= a for a, b in zip(v, v[1:])):
            raise ValueError("les tailles doivent être strictement croissantes")
        return v

    @model_validator(mode="after")
    def check_consistency(self) -> "ExperimentSpec":
        if self.scaling not in ALLOWED_SCALINGS[self.model]:
            raise ValueError(f"scaling {self.scaling.value} incompatible avec le modèle {self.model.value}")
        if self.target == Target.two_sample and self.reference is None:
            raise ValueError("target two-sample exige un bloc reference")
        if self.target == Target.hydro:
            raise ValueError("target hydro : utiliser run_hydro_experiment")
        return self


class KsResult(BaseModel):
    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    statistic: Annotated[float, Field(ge=0, le=1)]
    n: Annotated[int, Field(ge=1)]
    dkw_epsilon: float
    delta: float
    threshold: Optional[float] = None
    p_value: Optional[float] = None
    passed: bool = Field(alias="pass")


class ReplicaFailure(BaseModel):
    replica: int
    error: str
    detail: str


class SizeSummary(BaseModel):
    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    size: float
    count: int
    mean: Optional[float] = None
    variance: Optional[float] = None
    skewness: Optional[float] = None
    ks: Optional[KsResult] = None
    two_sample: Optional[KsResult] = None
    failures: List[ReplicaFailure] = Field(default_factory=list)
    extra: Dict[str, Any] = Field(default_factory=dict)


class ExperimentReport(BaseModel):
    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    schema_version: int = 1
    kind: str
    spec: Dict[str, Any]
    summaries: List[SizeSummary] = Field(default_factory=list)
    trends: Dict[str, bool] = Field(default_factory=dict)
    thresholds: Dict[str, Any] = Field(default_factory=dict)
    extra: Dict[str, Any] = Field(default_factory=dict)
    rng: Dict[str, Any] = Field(default_factory=dict)
    passed: bool = True
    digest: str = ""
    timing: Dict[str, Any] = Field(default_factory=dict)

    def deterministic_content(self) -> Dict[str, Any]:
        return self.model_dump(mode="json", by_alias=True, exclude={"timing", "digest"})


# ---- CLI ----

class Subcommand(str, Enum):
    simulate = "simulate"
    exact = "exact"
    dist = "dist"
    experiment = "experiment"
    roots = "roots"


class OutputFormat(str, Enum):
    csv = "csv"
    json = "json"


class CliConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    subcommand: Subcommand
    params: Dict[str, Any] = Field(default_factory=dict)
    seed: Annotated[int, Field(ge=0, lt=2**64)] = 42
    output: Optional[str] = None
    format: OutputFormat = OutputFormat.json
    workers: Annotated[int, Field(ge=1)] = 1


class ExactRecord(BaseModel):
    model_config = ConfigDict(extra="forbid")

    X: List[int]
    Y: List[int]
    t: Annotated[float, Field(ge=0)]
    L: Optional[int] = None
    N: int
    probability: float
    diagnostics: Dict[str, Any] = Field(default_factory=dict)
    seed: Optional[int] = None
