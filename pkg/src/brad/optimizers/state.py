"""Optimizer state, lifetime schedules and seeded random sub-streams."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from ..errors import ConfigurationError

MIN_AGENTS = 8
LOWER_BOUND = 0.0

# sub-stream purpose tags
INIT_STREAM = 0
STEP_STREAM = 1


def substream(seed: int, *key: int) -> np.random.Generator:
    """Independent generator for ``(seed, *key)``; evaluation order cannot leak between keys."""
    return np.random.default_rng(np.random.SeedSequence([seed, *key]))


def encircling_coefficient(ci: int, mi: int, begin: int = 0) -> float:
    """Linear 2 -> 0 between ``begin`` and ``mi``; the GWO ``a`` schedule when ``begin`` is 0."""
    if mi <= begin:
        return 0.0
    return 2.0 - 2.0 * (ci - begin) / (mi - begin)


def delta_weight(ci: int, mi: int, begin: int = 0) -> float:
    """Weight on the delta leaders, linear 1 -> 0 over a wolf's lifetime."""
    if mi <= begin:
        return 0.0
    return 1.0 - (ci - begin) / (mi - begin)


def elimination_threshold(ci: int, mi: int) -> float:
    return ci / mi if mi > 0 else 1.0


@dataclass
class OptimizerState:
    population: np.ndarray
    fitness: np.ndarray
    max_iter: int
    seed: int
    ub: float
    iteration: int = 0
    lifetime_begin: Optional[np.ndarray] = None
    best_position: Optional[np.ndarray] = None
    best_fitness: float = float("inf")
    leaders: Optional[np.ndarray] = None
    history: list[float] = field(default_factory=list)

    def __post_init__(self):
        self.population = np.asarray(self.population, dtype=float)
        self.fitness = np.asarray(self.fitness, dtype=float)
        if self.population.ndim != 2:
            raise ConfigurationError("population must be a 2-D array")
        if len(self.population) < MIN_AGENTS:
            raise ConfigurationError(
                f"need at least {MIN_AGENTS} search agents, got {len(self.population)}"
            )
        if self.fitness.shape != (len(self.population),):
            raise ConfigurationError("fitness must align with population")
        if self.lifetime_begin is None:
            self.lifetime_begin = np.zeros(len(self.population), dtype=int)
        self.refresh()

    @property
    def n_agents(self) -> int:
        return len(self.population)

    def ranking(self) -> np.ndarray:
        """Wolf indices from best to worst; equal fitness keeps index order."""
        return np.argsort(self.fitness, kind="stable")

    def worst(self) -> int:
        return int(np.argmax(self.fitness))

    def refresh(self) -> None:
        """Re-elect leaders and fold the current population into the best-ever record."""
        order = self.ranking()
        self.leaders = order[:7].copy()
        top = int(order[0])
        if self.fitness[top] < self.best_fitness:
            self.best_fitness = float(self.fitness[top])
            self.best_position = self.population[top].copy()
