from kpzlab.sampler.brownian import sample_brownian_dk
from kpzlab.sampler.lis import (
    PointCloud,
    lis_length,
    points_to_permutation,
    sample_permutation_lis,
    sample_poisson_lis,
    sample_poisson_points,
)
from kpzlab.sampler.lpp import (
    EXP_WEIGHTS,
    LppTable,
    dlpp_corner,
    diagonal_extent,
    dlpp_table,
    height_from_dlpp,
    hydro_extent,
    table_from_weights,
    thin_dlpp,
)
from kpzlab.sampler.tasep import LineRun, RingRun, simulate_tasep_line, simulate_tasep_ring
from kpzlab.sampler.wishart import sample_wishart_lmax, wishart_eigenvalues

__all__ = [
    "EXP_WEIGHTS",
    "LineRun",
    "LppTable",
    "PointCloud",
    "RingRun",
    "dlpp_corner",
    "diagonal_extent",
    "dlpp_table",
    "height_from_dlpp",
    "hydro_extent",
    "lis_length",
    "points_to_permutation",
    "sample_brownian_dk",
    "sample_permutation_lis",
    "sample_poisson_lis",
    "sample_poisson_points",
    "sample_wishart_lmax",
    "simulate_tasep_line",
    "simulate_tasep_ring",
    "table_from_weights",
    "thin_dlpp",
    "wishart_eigenvalues",
]
