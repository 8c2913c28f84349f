# kpzlab/utils.py
import hashlib
import json
import math
from datetime import datetime, timezone
from typing import Any

import numpy as np


def now_iso() -> str:
    return datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


def sanitize_json(obj: Any) -> Any:
    """Remplace NaN/inf par None, complexes par {re, im}, numpy par des types Python."""
    if isinstance(obj, (complex, np.complexfloating)):
        return {"re": sanitize_json(float(obj.real)), "im": sanitize_json(float(obj.imag))}
    if isinstance(obj, (float, np.floating)):
        val = float(obj)
        if math.isnan(val) or math.isinf(val):
            return None
        return val
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, np.ndarray):
        return [sanitize_json(v) for v in obj.tolist()]
    if isinstance(obj, dict):
        return {str(k): sanitize_json(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [sanitize_json(v) for v in obj]
    return obj


def digest(payload: Any) -> str:
    canonical = json.dumps(sanitize_json(payload), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def parse_range(text: str) -> np.ndarray:
    """'a:b:pas' -> grille inclusive ; 'a,b,c' -> liste explicite."""
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise ValueError(f"plage invalide : {text!r} (attendu a:b:pas)")
        start, stop, step = (float(p) for p in parts)
        if step <= 0 or stop < start:
            raise ValueError(f"plage invalide : {text!r}")
        count = int(math.floor((stop - start) / step + 1e-9)) + 1
        last = start + step * (count - 1)
        if abs(last - stop) <= 1e-9 * step:
            # stop atteint : extrémités exactes
            return np.linspace(start, stop, count)
        return start + step * np.arange(count)
    return np.array([float(p) for p in text.split(",") if p.strip()])

