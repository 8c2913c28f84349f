# kpzlab/commands/roots.py
import cmath
import logging
from typing import Any, Dict, List

from kpzlab.commands.output import emit
from kpzlab.errors import UsageError
from kpzlab.exact.bethe import bethe_roots, critical_radius
from kpzlab.exact.limit_roots import bethe_for_limit, limit_root_set, match_root_sets, rescale_bethe_to_limit

logger = logging.getLogger(__name__)


def register(subparsers) -> None:
    parser = subparsers.add_parser("roots", help="racines de Bethe w^N (w+1)^{L-N} = z")
    parser.add_argument("--L", type=int, default=None)
    parser.add_argument("--N", type=int, required=True)
    parser.add_argument("--z-abs-frac", type=float, default=0.5, help="|z| en fraction de z_c")
    parser.add_argument("--z-arg", type=float, default=0.0, help="argument de z (radians)")
    parser.add_argument("--zeta", type=complex, default=None,
                        help="mode limite : L = 2N, z = zeta (-4)^-N, comparaison aux racines de e^{-s^2/2} = zeta")
    parser.add_argument("--R", type=float, default=6.0, help="rayon de comparaison en mode limite")
    parser.set_defaults(handler=run)


def _as_json(values) -> List[Dict[str, float]]:
    return [{"re": float(v.real), "im": float(v.imag)} for v in values]


def run(args) -> int:
    if args.zeta is not None:
        return _run_limit(args)
    if args.L is None:
        raise UsageError("--L est requis (ou --zeta pour le mode limite)")
    if not 1 <= args.N < args.L:
        raise UsageError(f"N={args.N} doit être dans [1, L-1], L={args.L}")

    z = args.z_abs_frac * critical_radius(args.L, args.N) * cmath.exp(1j * args.z_arg)
    rootset = bethe_roots(args.L, args.N, z)
    payload: Dict[str, Any] = {
        "L": args.L,
        "N": args.N,
        "z": {"re": z.real, "im": z.imag},
        "roots": _as_json(rootset.roots),
        "residuals": [float(r) for r in rootset.residuals],
        "min_gap": rootset.min_gap,
        "sweeps": rootset.sweeps,
    }
    rows = [
        {"re": float(w.real), "im": float(w.imag), "residual": float(r)}
        for w, r in zip(rootset.roots, rootset.residuals)
    ]
    emit(args, payload, rows)
    return 0


def _run_limit(args) -> int:
    rootset = bethe_for_limit(args.N, args.zeta)
    rescaled = rescale_bethe_to_limit(rootset)

    limit = limit_root_set(args.zeta, args.R)
    matching = match_root_sets(rescaled, limit.roots, radius=args.R)
    logger.info("🔄 %d racines limites, écart max %.3g", len(limit.roots), matching.max_distance)

    payload = {
        "N": args.N,
        "L": 2 * args.N,
        "zeta": {"re": args.zeta.real, "im": args.zeta.imag},
        "R": args.R,
        "rescaled_roots": _as_json(rescaled),
        "limit_roots": _as_json(limit.roots),
        "pairs": [{"found": _as_json([a])[0], "limit": _as_json([b])[0]} for a, b in matching.pairs],
        "max_distance": matching.max_distance,
    }
    rows = [
        {"found_re": a.real, "found_im": a.imag, "limit_re": b.real, "limit_im": b.imag, "distance": float(d)}
        for (a, b), d in zip(matching.pairs, matching.distances)
    ]
    emit(args, payload, rows)
    return 0
