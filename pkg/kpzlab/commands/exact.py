# kpzlab/commands/exact.py
from kpzlab.commands.output import emit, parse_list
from kpzlab.errors import UsageError
from kpzlab.exact.contour import ContourSpec
from kpzlab.exact.periodic import default_z_contour, periodic_transition_detail
from kpzlab.exact.schuetz import DEFAULT_CONTOUR, schuetz_transition_detail
from kpzlab.models import ExactRecord


def register(subparsers) -> None:
    parser = subparsers.add_parser("exact", help="probabilité de transition exacte (droite ou anneau)")
    parser.add_argument("--kind", choices=["line", "ring"], default="line")
    parser.add_argument("--X", required=True, help="positions finales x_1 < ... < x_N")
    parser.add_argument("--Y", required=True, help="positions initiales y_1 < ... < y_N")
    parser.add_argument("--t", type=float, required=True)
    parser.add_argument("--L", type=int, default=None, help="période (anneau)")
    parser.add_argument("--radius", type=float, default=None,
                        help="rayon du contour (droite : cercle centré en -1/2 ; anneau : fraction de z_c)")
    parser.add_argument("--no-radius-check", action="store_true")
    parser.set_defaults(handler=run)


def run(args) -> int:
    X = parse_list(args.X, int)
    Y = parse_list(args.Y, int)
    if args.kind == "line":
        contour = DEFAULT_CONTOUR if args.radius is None else ContourSpec(
            center=DEFAULT_CONTOUR.center, radius=args.radius, nodes=DEFAULT_CONTOUR.nodes
        )
        result = schuetz_transition_detail(X, Y, args.t, contour)
        L = None
    else:
        if args.L is None:
            raise UsageError("--L est requis pour --kind ring")
        L = args.L
        zc = None if args.radius is None else default_z_contour(L, len(Y), args.radius)
        result = periodic_transition_detail(X, Y, args.t, L, zc, check_radius=not args.no_radius_check)

    record = ExactRecord(
        X=X,
        Y=Y,
        t=args.t,
        L=L,
        N=len(Y),
        probability=result.probability,
        diagnostics={"imag_residue": result.imag_residue, **result.diagnostics},
        seed=args.seed,
    )
    payload = record.model_dump(mode="json")
    row = {**payload, "X": " ".join(map(str, X)), "Y": " ".join(map(str, Y))}
    row.pop("diagnostics")
    row.pop("seed")
    emit(args, payload, [row])
    return 0
