# kpzlab/main.py
import argparse
import json
import logging
import re
import sys
from typing import List, Optional, Sequence

from pydantic import ValidationError

from config import KPZLAB_SEED, KPZLAB_WORKERS
from kpzlab.commands import dist, exact, experiment, roots, simulate
from kpzlab.errors import KpzlabError, UsageError
from kpzlab.harness.thresholds import load_thresholds
from kpzlab.models import CliConfig
from kpzlab.numerics import describe_numerics

logger = logging.getLogger("kpzlab")

# valeurs qui commencent par '-' sans être des nombres pour argparse ("-2:4:0.5", "-3,-1")
_DASHED_VALUE = re.compile(r"^-[\d.]")


class KpzlabArgumentParser(argparse.ArgumentParser):
    """Erreurs d'usage : texte d'usage sur stderr puis UsageError (code de sortie 1)."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def build_parser() -> KpzlabArgumentParser:
    parser = KpzlabArgumentParser(
        prog="kpzlab",
        description="Laboratoire numérique TASEP / DLPP / Tracy-Widom.",
    )
    parser.add_argument("--seed", type=lambda v: int(v, 0), default=KPZLAB_SEED,
                        help="graine 64 bits (env KPZLAB_SEED, défaut 42)")
    parser.add_argument("--output", default=None, help="fichier de sortie (stdout sinon)")
    parser.add_argument("--format", choices=["csv", "json"], default=None)
    parser.add_argument("--workers", type=int, default=KPZLAB_WORKERS)
    parser.add_argument("--describe-numerics", action="store_true",
                        help="affiche toutes les tolérances, grilles et seuils en vigueur")
    parser.add_argument("-v", "--verbose", action="count", default=0)

    subparsers = parser.add_subparsers(dest="subcommand", parser_class=KpzlabArgumentParser)
    for command in (simulate, exact, dist, experiment, roots):
        command.register(subparsers)
    return parser


def _join_dashed_values(argv: Sequence[str]) -> List[str]:
    out: List[str] = []
    for token in argv:
        if out and out[-1].startswith("--") and "=" not in out[-1] and _DASHED_VALUE.match(token):
            out[-1] = f"{out[-1]}={token}"
        else:
            out.append(token)
    return out


def _configure_logging(verbose: int) -> None:
    level = logging.WARNING if verbose == 0 else logging.INFO if verbose == 1 else logging.DEBUG
    logging.basicConfig(level=level, stream=sys.stderr, format="%(asctime)s %(levelname)s %(name)s: %(message)s")


def _numerics_payload() -> dict:
    thresholds = load_thresholds()
    return {"numerics": describe_numerics(), "thresholds": thresholds.model_dump()}


def parse_and_dispatch(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_join_dashed_values(argv))
        _configure_logging(args.verbose)

        if args.describe_numerics:
            sys.stdout.write(json.dumps(_numerics_payload(), indent=2, ensure_ascii=False) + "\n")
            return 0
        if args.subcommand is None:
            parser.print_usage(sys.stderr)
            raise UsageError("une sous-commande est requise")

        try:
            CliConfig(
                subcommand=args.subcommand,
                seed=args.seed,
                output=args.output,
                format=args.format or "json",
                workers=args.workers,
            )
        except ValidationError as exc:
            raise UsageError(f"configuration invalide : {exc}")

        try:
            return args.handler(args)
        except ValidationError as exc:
            raise UsageError(f"paramètres invalides : {exc}")

    except SystemExit as exc:
        # --help
        return int(exc.code or 0)
    except KpzlabError as exc:
        logger.error("%s : %s", type(exc).__name__, exc.detail)
        sys.stderr.write(json.dumps(exc.to_dict(), default=str, ensure_ascii=False) + "\n")
        return exc.exit_code


def main() -> None:
    sys.exit(parse_and_dispatch())


if __name__ == "__main__":
    main()
