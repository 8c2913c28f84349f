from kpzlab.harness.ctmc import (
    CtmcOracle,
    ctmc_oracle,
    line_ctmc_oracle,
    line_transition_law,
    ring_occupancy_law,
    ring_positions_of,
    ring_state_of,
)
from kpzlab.harness.stats import dkw_epsilon, ecdf, ks_one_sample, ks_two_sample, summarize
from kpzlab.harness.thresholds import Thresholds, load_thresholds

__all__ = [
    "CtmcOracle",
    "Thresholds",
    "ctmc_oracle",
    "dkw_epsilon",
    "ecdf",
    "ks_one_sample",
    "ks_two_sample",
    "line_ctmc_oracle",
    "line_transition_law",
    "load_thresholds",
    "ring_occupancy_law",
    "ring_positions_of",
    "ring_state_of",
    "summarize",
]
