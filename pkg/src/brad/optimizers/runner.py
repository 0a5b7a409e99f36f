"""End-to-end optimisation runs for the grey wolf variants."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import partial
from typing import Callable, Optional

import numpy as np

from ..decoder import DecodeOutcome, decode, fitness
from ..errors import ConfigurationError
from ..model import ObjectiveParams, Workload
from .gwa import ELIMINATION_RULES, UpdateEvent, gwa_step
from .gwo import evaluate_all, gwo_step
from .initialiser import gwa_initialise
from .state import INIT_STREAM, MIN_AGENTS, OptimizerState, substream


class Algorithm(str, enum.Enum):
    GWA = "gwa"
    GWO = "gwo"


@dataclass(frozen=True)
class RunConfig:
    nsa: int = 20
    max_iter: int = 100
    ub: float = 10.0
    w: float = -5.0
    seed: int = 0
    elimination_rule: str = "rationale"

    def __post_init__(self):
        if self.nsa < MIN_AGENTS:
            raise ConfigurationError(f"nsa must be >= {MIN_AGENTS}, got {self.nsa}")
        if self.max_iter < 0:
            raise ConfigurationError("max_iter must be nonnegative")
        if not self.ub > 0:
            raise ConfigurationError("ub must be positive")
        if self.elimination_rule not in ELIMINATION_RULES:
            raise ConfigurationError(f"unknown elimination rule {self.elimination_rule!r}")

    @property
    def params(self) -> ObjectiveParams:
        return ObjectiveParams(self.w)


@dataclass(frozen=True)
class RunResult:
    best_position: np.ndarray
    best_outcome: DecodeOutcome
    # history[0] is the initial population's best; one entry per iteration after that
    history: tuple[float, ...]


def initial_state(workload: Workload, config: RunConfig, fitness_fn) -> OptimizerState:
    rng = substream(config.seed, INIT_STREAM)
    pop = gwa_initialise(config.nsa, workload, config.ub, config.params, rng)
    state = OptimizerState(
        population=pop,
        fitness=evaluate_all(pop, fitness_fn),
        max_iter=config.max_iter,
        seed=config.seed,
        ub=config.ub,
    )
    state.history.append(state.best_fitness)
    return state


def run(
    algo: Algorithm | str,
    workload: Workload,
    config: RunConfig = RunConfig(),
    on_update: Optional[Callable[[UpdateEvent], None]] = None,
) -> RunResult:
    """Optimise ``workload`` and decode the best wolf ever seen.

    Both variants start from the same bimetric initialiser so that
    differences come from the update rule alone.
    """
    algo = Algorithm(algo)
    params = config.params
    fitness_fn = partial(fitness, workload=workload, params=params, ub=config.ub)
    state = initial_state(workload, config, fitness_fn)
    for _ in range(config.max_iter):
        if algo is Algorithm.GWA:
            gwa_step(state, fitness_fn, config.elimination_rule, on_update)
        else:
            gwo_step(state, fitness_fn)
    return RunResult(
        best_position=state.best_position.copy(),
        best_outcome=decode(state.best_position, workload, params, config.ub),
        history=tuple(state.history),
    )
