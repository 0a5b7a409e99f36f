"""Improved grey wolf step: seven-leader greedy hierarchies and lifetime elimination."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from ..errors import ConfigurationError
from .gwo import FitnessFn, adjusted_leaders
from .state import (
    LOWER_BOUND,
    MIN_AGENTS,
    STEP_STREAM,
    OptimizerState,
    delta_weight,
    elimination_threshold,
    encircling_coefficient,
    substream,
)

N_LEADERS = 7
HIERARCHIES = ("A", "B", "C", "D")

# "rationale": fire when e < tau, so elimination grows more likely over time.
# "literal": fire when e >= tau. "off": never eliminate.
ELIMINATION_RULES = ("rationale", "literal", "off")


@dataclass(frozen=True)
class UpdateEvent:
    """What a non-worst wolf saw and picked during one iteration."""

    iteration: int
    wolf: int
    candidate_fitness: tuple[float, float, float, float]
    chosen: int

    @property
    def chosen_fitness(self) -> float:
        return self.candidate_fitness[self.chosen]


def eliminates(decider: float, tau: float, rule: str) -> bool:
    if rule == "rationale":
        return decider < tau
    if rule == "literal":
        return decider >= tau
    if rule == "off":
        return False
    raise ConfigurationError(f"unknown elimination rule {rule!r}")


def hierarchy_candidates(moves: np.ndarray, dw: float) -> np.ndarray:
    """The four social-hierarchy blends of seven leader moves (rows in rank order).

    A: alpha = rank 1, betas = ranks 2-3, deltas = ranks 4-6.
    B/C/D: betas = ranks 3-4, deltas = ranks 5-7, alpha = rank 1, rank 2,
    or the mean of both. Deltas are scaled by ``dw`` and the blend is
    normalised by ``2 + dw``.
    """
    x1, x2, x3, x4 = moves[0], moves[1], moves[2], moves[3]
    late_beta = (x3 + x4) / 2
    late_delta = moves[4:7].mean(axis=0) * dw
    denom = 2.0 + dw
    return np.stack(
        [
            (x1 + (x2 + x3) / 2 + moves[3:6].mean(axis=0) * dw) / denom,
            (x1 + late_beta + late_delta) / denom,
            (x2 + late_beta + late_delta) / denom,
            ((x1 + x2) / 2 + late_beta + late_delta) / denom,
        ]
    )


def gwa_step(
    state: OptimizerState,
    fitness_fn: FitnessFn,
    elimination_rule: str = "rationale",
    on_update: Optional[Callable[[UpdateEvent], None]] = None,
) -> OptimizerState:
    if state.n_agents < MIN_AGENTS:
        raise ConfigurationError(f"need at least {MIN_AGENTS} search agents")
    if elimination_rule not in ELIMINATION_RULES:
        raise ConfigurationError(f"unknown elimination rule {elimination_rule!r}")

    ci, mi, ub = state.iteration, state.max_iter, state.ub
    tau = elimination_threshold(ci, mi)
    pop = state.population
    nsa, dim = pop.shape
    leaders = pop[state.ranking()[:N_LEADERS]].copy()
    worst = state.worst()
    bl = state.lifetime_begin

    new_pop = pop.copy()
    new_fit = state.fitness.copy()
    for i in range(nsa):
        rng = substream(state.seed, STEP_STREAM, ci, i)
        if i == worst:
            if not eliminates(rng.random(), tau, elimination_rule):
                continue
            bl[i] = ci
            if rng.random() <= 0.5:
                fresh = rng.uniform(LOWER_BOUND, ub, size=dim)
            else:
                survivor = int(rng.integers(nsa - 1))
                survivor += survivor >= i
                fresh = LOWER_BOUND + ub - pop[survivor]
            new_pop[i] = np.clip(fresh, LOWER_BOUND, ub)
            new_fit[i] = fitness_fn(new_pop[i])
            continue

        begin = int(bl[i])
        a = encircling_coefficient(ci, mi, begin)
        dw = delta_weight(ci, mi, begin)
        moves = adjusted_leaders(pop[i], leaders, a, rng)
        cands = np.clip(hierarchy_candidates(moves, dw), LOWER_BOUND, ub)
        fits = tuple(float(fitness_fn(c)) for c in cands)
        k = int(np.argmin(fits))
        new_pop[i] = cands[k]
        new_fit[i] = fits[k]
        if on_update is not None:
            on_update(UpdateEvent(ci, i, fits, k))

    state.population = new_pop
    state.fitness = new_fit
    state.refresh()
    state.iteration += 1
    state.history.append(state.best_fitness)
    return state
