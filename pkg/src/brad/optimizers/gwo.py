"""Vanilla grey wolf optimizer step (alpha/beta/delta encircling)."""

from __future__ import annotations

from typing import Callable

import numpy as np

from .state import LOWER_BOUND, STEP_STREAM, OptimizerState, encircling_coefficient, substream

FitnessFn = Callable[[np.ndarray], float]


def adjusted_leaders(x: np.ndarray, leaders: np.ndarray, a: float, rng: np.random.Generator) -> np.ndarray:
    """Encircling moves of ``x`` towards each leader row, with fresh ``A``/``C`` per leader.

    ``D = |C * X_l - x|`` component-wise and the move is ``X_l - A * D`` with
    ``A = 2 a r1 - a`` and ``C = 2 r2``.
    """
    out = np.empty_like(leaders)
    n = x.shape[0]
    for j, lead in enumerate(leaders):
        r1 = rng.random(n)
        r2 = rng.random(n)
        A = 2.0 * a * r1 - a
        C = 2.0 * r2
        D = np.abs(C * lead - x)
        out[j] = lead - A * D
    return out


def evaluate_all(population: np.ndarray, fitness_fn: FitnessFn) -> np.ndarray:
    return np.array([fitness_fn(p) for p in population], dtype=float)


def gwo_step(state: OptimizerState, fitness_fn: FitnessFn) -> OptimizerState:
    """One synchronous GWO iteration against the top-3 wolves at iteration start."""
    a = encircling_coefficient(state.iteration, state.max_iter)
    pop = state.population
    leaders = pop[state.ranking()[:3]].copy()
    new = np.empty_like(pop)
    for i in range(state.n_agents):
        rng = substream(state.seed, STEP_STREAM, state.iteration, i)
        moves = adjusted_leaders(pop[i], leaders, a, rng)
        new[i] = np.clip(moves.mean(axis=0), LOWER_BOUND, state.ub)
    state.population = new
    state.fitness = evaluate_all(new, fitness_fn)
    state.refresh()
    state.iteration += 1
    state.history.append(state.best_fitness)
    return state
