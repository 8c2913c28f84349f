from kpzlab.limits.airy import airy, airy_array
from kpzlab.limits.kpz import (
    d_matrix_diag,
    hydro_profile,
    kpz_one_point_cdf,
    kpz_rescale,
    periodic_large_time_map,
    periodic_small_time_map,
    tw_argument,
)
from kpzlab.limits.painleve import hastings_mcleod, painleve2_tw_cdf
from kpzlab.limits.tracy_widom import (
    CdfTable,
    TracyWidom,
    cdf_table_on,
    default_tracy_widom,
    tracy_widom_cdf,
    tracy_widom_table,
)

__all__ = [
    "CdfTable",
    "TracyWidom",
    "airy",
    "airy_array",
    "cdf_table_on",
    "d_matrix_diag",
    "default_tracy_widom",
    "hastings_mcleod",
    "hydro_profile",
    "kpz_one_point_cdf",
    "kpz_rescale",
    "painleve2_tw_cdf",
    "periodic_large_time_map",
    "periodic_small_time_map",
    "tracy_widom_cdf",
    "tracy_widom_table",
    "tw_argument",
]
