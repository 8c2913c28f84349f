# kpzlab/commands/dist.py
from kpzlab.commands.output import emit
from kpzlab.errors import UsageError
from kpzlab.limits.tracy_widom import cdf_table_on
from kpzlab.utils import parse_range


def register(subparsers) -> None:
    parser = subparsers.add_parser("dist", help="table de la loi de Tracy-Widom (CSV x, F, method, tolerance)")
    parser.add_argument("--method", choices=["fredholm", "nystrom", "painleve"], default="fredholm")
    parser.add_argument("--x", default="-10:6:0.5", help="grille a:b:pas ou liste a,b,c")
    parser.set_defaults(handler=run)


def run(args) -> int:
    try:
        grid = parse_range(args.x)
    except ValueError as exc:
        raise UsageError(str(exc))
    table = cdf_table_on(grid, args.method)
    records = table.to_records()
    emit(args, {"method": table.method, "tolerance": table.tolerance, "table": records}, records, default_format="csv")
    return 0
