import os
from dotenv import load_dotenv

load_dotenv()

KPZLAB_OUTPUT_DIR = os.getenv("KPZLAB_OUTPUT_DIR", "out")


def _int_env(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return int(raw, 0)
    except ValueError:
        raise RuntimeError(f"{name} doit être un entier (reçu : {raw!r}).")


KPZLAB_SEED = _int_env("KPZLAB_SEED", 42)
KPZLAB_WORKERS = _int_env("KPZLAB_WORKERS", 1)

if not 0 <= KPZLAB_SEED < 2**64:
    raise RuntimeError("KPZLAB_SEED doit tenir sur 64 bits non signés.")
if KPZLAB_WORKERS < 1:
    raise RuntimeError("KPZLAB_WORKERS doit être >= 1.")
