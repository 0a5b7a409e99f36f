from .baselines import Baseline, baseline_allocate
from .gwa import ELIMINATION_RULES, UpdateEvent, gwa_step, hierarchy_candidates
from .gwo import adjusted_leaders, gwo_step
from .initialiser import gwa_initialise, merge_closest, preferred_rich
from .runner import Algorithm, RunConfig, RunResult, initial_state, run
from .state import (
    OptimizerState,
    delta_weight,
    elimination_threshold,
    encircling_coefficient,
    substream,
)

__all__ = [
    "Algorithm",
    "Baseline",
    "ELIMINATION_RULES",
    "OptimizerState",
    "RunConfig",
    "RunResult",
    "UpdateEvent",
    "adjusted_leaders",
    "baseline_allocate",
    "delta_weight",
    "elimination_threshold",
    "encircling_coefficient",
    "gwa_initialise",
    "gwa_step",
    "gwo_step",
    "hierarchy_candidates",
    "initial_state",
    "merge_closest",
    "preferred_rich",
    "run",
    "substream",
]
