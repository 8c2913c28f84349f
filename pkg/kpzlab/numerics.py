# kpzlab/numerics.py
"""Toutes les tolérances, grilles et ordres de quadrature en vigueur.

`describe_numerics()` est ce qu'affiche `kpzlab --describe-numerics`.
"""

from typing import Any, Dict

# ---------------------------
# Contours
# ---------------------------
CONTOUR_CENTER = -0.5
CONTOUR_RADIUS = 1.0
CONTOUR_MIN_NODES = 16
CONTOUR_MAX_NODES = 2**16
CONTOUR_TOL = 1e-13
IMAG_RESIDUE_TOL = 1e-10
PROBABILITY_SLACK = 1e-10

PERIODIC_Z_RADIUS_FRACTION = 0.5
PERIODIC_MIN_NODES = 16
PERIODIC_MAX_NODES = 2**12
PERIODIC_TOL = 1e-12
PERIODIC_RADIUS_CHECK_FRACTION = 0.25
PERIODIC_RADIUS_TOL = 1e-9
# chiffres ajoutés au log10 de la borne de Hadamard de l'intégrande
PERIODIC_GUARD_DIGITS = 25

# Troncature des sommes de normalisation (queue de Poisson)
POISSON_TAIL_BOUND = 1e-10

# ---------------------------
# Racines de Bethe
# ---------------------------
BETHE_MAX_SWEEPS = 500
BETHE_STEP_TOL = 1e-15
BETHE_RESIDUAL_TOL = 1e-12
BETHE_MIN_GAP = 1e-9
BETHE_POLISH_STEPS = 2
LIMIT_ROOT_RESIDUAL_TOL = 1e-12

# ---------------------------
# Airy / Tracy-Widom / Painlevé II
# ---------------------------
AIRY_RANGE = 40.0
AIRY_SERIES_CUTOFF = 8.0
AIRY_SERIES_GUARD_DIGITS = 20
TW_RANGE = (-12.0, 8.0)
TW_DEFAULT_GRID = (-10.0, 6.0)
TW_NYSTROM_ORDER = 80
TW_NYSTROM_MAX_ORDER = 640
TW_NYSTROM_TOL = 1e-10
TW_MAP_SCALE = 10.0
PAINLEVE_LEFT = -14.0
PAINLEVE_RIGHT = 8.0
PAINLEVE_TOL = 1e-11
PAINLEVE_MAX_NODES = 200_000
PAINLEVE_INITIAL_NODES = 2001
TW_TABLE_STEP = 0.005

# ---------------------------
# Échantillonneurs
# ---------------------------
EVENT_CHUNK = 4096
BROWNIAN_GRID_FACTOR = 40
LPP_HYDRO_MARGIN = 1.25

# ---------------------------
# Oracle CTMC / harness
# ---------------------------
CTMC_MAX_STATES = 10_000
CTMC_ROW_TOL = 1e-12
KS_CONFIDENCE_DELTA = 0.01
EXACT_VS_MC_SIGMAS = 4.0
EXACT_VS_ORACLE_TOL = 1e-8
DEFAULT_SAMPLES = 10_000


def describe_numerics() -> Dict[str, Any]:
    """Dictionnaire plat (nom -> valeur) des constantes publiques du module."""
    out: Dict[str, Any] = {}
    for name, value in sorted(globals().items()):
        if name.isupper() and not name.startswith("_"):
            out[name] = list(value) if isinstance(value, tuple) else value
    return out
