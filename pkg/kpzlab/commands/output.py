# kpzlab/commands/output.py
"""Écriture des artefacts de la CLI ; la graine est recopiée dans chaque sortie."""

import sys
from typing import Any, Dict, List, Optional

import pandas as pd

from kpzlab.errors import UsageError
from kpzlab.storage import dump_json, write_json, write_table


def parse_list(text: str, cast=float) -> List:
    try:
        return [cast(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise UsageError(f"liste invalide : {text!r}")


def emit(args, payload: Dict[str, Any], rows: Optional[List[Dict[str, Any]]] = None, default_format: str = "json") -> None:
    fmt = args.format or default_format
    if fmt == "json":
        document = {"seed": args.seed, **payload}
        if args.output:
            write_json(args.output, document)
        else:
            sys.stdout.write(dump_json(document) + "\n")
        return

    if rows is None:
        raise UsageError(f"format csv indisponible pour {args.subcommand}")
    df = pd.DataFrame(rows)
    df["seed"] = args.seed
    if args.output:
        write_table(args.output, df)
    else:
        sys.stdout.write(df.to_csv(index=False, float_format="%.17g"))
