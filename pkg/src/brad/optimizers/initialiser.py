"""Bimetric-balanced, density-aware population initialiser."""

from __future__ import annotations

import math

import numpy as np

from ..errors import ConfigurationError
from ..model import ObjectiveParams, Scenario, Workload, service_objective
from .state import MIN_AGENTS

OVERSAMPLE = 1.5


def preferred_rich(workload: Workload, params: ObjectiveParams) -> np.ndarray:
    """True where a service's stand-alone objective is no worse in the Rich scenario."""
    return np.array(
        [
            service_objective(workload, s, Scenario.RICH, params)
            <= service_objective(workload, s, Scenario.SCARCE, params)
            for s in workload.services
        ],
        dtype=bool,
    )


def merge_closest(vectors: np.ndarray, target: int) -> np.ndarray:
    """Repeatedly replace the closest pair (L2) by its mean until ``target`` rows remain.

    The merged vector is appended after the survivors. Ties go to the
    lexicographically first pair ``(i, j)`` with ``i < j``.
    """
    rows = [np.asarray(v, dtype=float) for v in vectors]
    while len(rows) > target:
        arr = np.stack(rows)
        d2 = ((arr[:, None, :] - arr[None, :, :]) ** 2).sum(axis=-1)
        d2[np.tril_indices(len(rows))] = np.inf
        i, j = np.unravel_index(int(np.argmin(d2)), d2.shape)
        merged = (rows[i] + rows[j]) / 2
        rows = [r for k, r in enumerate(rows) if k != i and k != j]
        rows.append(merged)
    return np.stack(rows)


def gwa_initialise(
    nsa: int,
    workload: Workload,
    ub: float,
    params: ObjectiveParams,
    rng: np.random.Generator,
) -> np.ndarray:
    """``nsa x N`` starting population.

    Each gene is drawn from the half of ``[0, ub]`` whose scenario has the
    lower stand-alone objective for that service; then ``ceil(1.5 * nsa)``
    draws are thinned back to ``nsa`` by merging nearest neighbours.
    """
    if nsa < MIN_AGENTS:
        raise ConfigurationError(f"need at least {MIN_AGENTS} search agents, got {nsa}")
    rich = preferred_rich(workload, params)
    half = ub / 2
    count = math.ceil(nsa * OVERSAMPLE)
    draws = rng.uniform(0.0, half, size=(count, len(rich)))
    # uniform() may round up to its upper limit; Rich genes must stay strictly below ub/2
    draws = np.minimum(draws, np.nextafter(half, 0.0))
    # Scarce-side genes land in [ub/2, ub)
    draws = np.where(rich, draws, draws + half)
    return merge_closest(draws, nsa)
