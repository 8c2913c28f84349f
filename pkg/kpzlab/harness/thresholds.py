# kpzlab/harness/thresholds.py
"""Seuils d'acceptation Monte-Carlo, versionnés dans kpzlab/thresholds.json."""

import json
from functools import lru_cache
from pathlib import Path
from typing import Annotated, Dict, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from kpzlab.errors import UsageError
from kpzlab.models import ExperimentModel

THRESHOLDS_PATH = Path(__file__).resolve().parent.parent / "thresholds.json"

Fraction = Annotated[float, Field(gt=0, le=1)]


class Thresholds(BaseModel):
    model_config = ConfigDict(extra="forbid")

    version: Annotated[int, Field(ge=1)]
    ks: Dict[str, Fraction]
    two_sample_p: Fraction
    hydro_sup_error: Annotated[float, Field(gt=0)]
    periodic_linear_r2: Fraction
    periodic_skewness_gap: Annotated[float, Field(gt=0)]
    dkw_delta: Fraction

    @field_validator("ks")
    @classmethod
    def validate_models(cls, v: Dict[str, float]) -> Dict[str, float]:
        known = {m.value for m in ExperimentModel}
        unknown = set(v) - known
        if unknown:
            raise ValueError(f"modèles inconnus dans ks : {sorted(unknown)}")
        return v

    def ks_for(self, model: ExperimentModel, override: Optional[float] = None) -> float:
        if override is not None:
            return override
        if model.value not in self.ks:
            raise UsageError(f"aucun seuil KS déclaré pour {model.value}")
        return self.ks[model.value]


def load_thresholds(path: Union[str, Path, None] = None) -> Thresholds:
    path = Path(path) if path is not None else THRESHOLDS_PATH
    if path == THRESHOLDS_PATH:
        return _default_thresholds()
    return _read(path)


def _read(path: Path) -> Thresholds:
    try:
        return Thresholds.model_validate(json.loads(path.read_text(encoding="utf-8")))
    except (OSError, json.JSONDecodeError, ValidationError) as exc:
        raise UsageError(f"fichier de seuils invalide : {path} ({exc})")


@lru_cache(maxsize=1)
def _default_thresholds() -> Thresholds:
    return _read(THRESHOLDS_PATH)
