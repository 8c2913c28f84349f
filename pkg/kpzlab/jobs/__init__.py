from kpzlab.jobs.exact_vs_mc import run_exact_vs_mc
from kpzlab.jobs.hydro_experiment import run_hydro_experiment
from kpzlab.jobs.periodic_experiment import run_periodic_experiment
from kpzlab.jobs.tw_experiment import run_tw_experiment
from kpzlab.jobs.wishart_identity import run_wishart_identity

__all__ = [
    "run_exact_vs_mc",
    "run_hydro_experiment",
    "run_periodic_experiment",
    "run_tw_experiment",
    "run_wishart_identity",
]
