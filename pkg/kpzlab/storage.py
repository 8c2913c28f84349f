# kpzlab/storage.py
"""Écriture des artefacts (JSON, CSV, parquet) sur disque local."""

import json
import logging
from pathlib import Path
from typing import Any, Dict, Union

import pandas as pd

from kpzlab.utils import sanitize_json

logger = logging.getLogger(__name__)

SAMPLE_COLUMNS = ["size", "replica", "raw", "scaled"]


def write_json(path: Union[str, Path], data: Dict[str, Any]) -> Path:
    """
    Écrit un dict en JSON (UTF-8, indenté). Crée le dossier parent si besoin.
    Les NaN/inf deviennent null, les complexes {re, im}.
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    payload = json.dumps(sanitize_json(data), ensure_ascii=False, indent=2)
    path.write_text(payload + "\n", encoding="utf-8")
    logger.info("JSON écrit dans %s", path)
    return path


def dump_json(data: Dict[str, Any]) -> str:
    return json.dumps(sanitize_json(data), ensure_ascii=False, indent=2)


def write_table(path: Union[str, Path], df: pd.DataFrame) -> Path:
    """CSV (séparateur décimal '.', sans locale) ou parquet selon le suffixe."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    if path.suffix == ".parquet":
        df.to_parquet(path, index=False, engine="pyarrow")
    else:
        df.to_csv(path, index=False, float_format="%.17g")
    logger.info("%d lignes écrites dans %s", len(df), path)
    return path


def samples_frame(rows: list[Dict[str, Any]]) -> pd.DataFrame:
    if not rows:
        return pd.DataFrame(columns=SAMPLE_COLUMNS)
    df = pd.DataFrame(rows)
    for col in SAMPLE_COLUMNS:
        if col not in df.columns:
            df[col] = None
    return df[SAMPLE_COLUMNS]


def read_json(path: Union[str, Path]) -> Dict[str, Any]:
    path = Path(path)
    with path.open(encoding="utf-8") as f:
        return json.load(f)
