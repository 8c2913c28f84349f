from kpzlab.exact.bethe import BetheRootSet, bethe_roots, critical_radius
from kpzlab.exact.contour import ContourSpec, circle_integral, circle_integral_mp
from kpzlab.exact.limit_roots import (
    LimitRootSet,
    RootMatching,
    bethe_for_limit,
    limit_root_set,
    match_root_sets,
    rescale_bethe_to_limit,
)
from kpzlab.exact.periodic import periodic_transition, periodic_transition_detail, shift_label
from kpzlab.exact.schuetz import (
    schuetz_entry,
    schuetz_transition,
    schuetz_transition_detail,
    truncated_support,
)

__all__ = [
    "BetheRootSet",
    "ContourSpec",
    "LimitRootSet",
    "RootMatching",
    "bethe_for_limit",
    "bethe_roots",
    "circle_integral",
    "circle_integral_mp",
    "critical_radius",
    "limit_root_set",
    "match_root_sets",
    "periodic_transition",
    "periodic_transition_detail",
    "rescale_bethe_to_limit",
    "schuetz_entry",
    "schuetz_transition",
    "schuetz_transition_detail",
    "shift_label",
    "truncated_support",
]
