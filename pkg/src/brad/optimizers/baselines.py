"""Order-based and greedy allocation baselines.

Each baseline picks a service order and, per service, a scenario to try
first; a service that does not fit there falls back to the other scenario.
"""

from __future__ import annotations

import enum
import math
from typing import Optional

import numpy as np

from ..decoder import DecodeOutcome, allocate
from ..model import ObjectiveParams, Scenario, ServiceSpec, Workload, service_cost, service_objective


class Baseline(str, enum.Enum):
    RAN = "ran"
    HIT_IHC = "hit-ihc"
    GRE_P = "gre-p"
    GRE_O = "gre-o"


RICH_FIRST = (Scenario.RICH, Scenario.SCARCE)
SCARCE_FIRST = (Scenario.SCARCE, Scenario.RICH)


def profit_cost_ratio(workload: Workload, service: ServiceSpec) -> float:
    """Best profit per unit of stand-alone cost over both scenarios."""
    best = 0.0
    for s in Scenario:
        cost = service_cost(workload, service, s)
        ratio = math.inf if cost == 0 else service.profit[s] / cost
        best = max(best, ratio)
    return best


def _order_and_preferences(
    method: Baseline, workload: Workload, params: ObjectiveParams, rng: Optional[np.random.Generator]
) -> tuple[list[int], list[tuple[Scenario, Scenario]]]:
    services = workload.services
    n = len(services)
    if method is Baseline.RAN:
        if rng is None:
            raise ValueError("RAN needs a random generator")
        return rng.permutation(n).tolist(), [RICH_FIRST] * n
    if method is Baseline.HIT_IHC:
        # first come first served by arrival (service id), priority users ahead
        order = sorted(range(n), key=lambda k: (not services[k].priority, k))
        return order, [RICH_FIRST] * n
    if method is Baseline.GRE_P:
        order = sorted(range(n), key=lambda k: (-services[k].max_profit, k))
        prefs = [
            RICH_FIRST if s.profit[Scenario.RICH] >= s.profit[Scenario.SCARCE] else SCARCE_FIRST
            for s in services
        ]
        return order, prefs
    if method is Baseline.GRE_O:
        ratios = [profit_cost_ratio(workload, s) for s in services]
        order = sorted(range(n), key=lambda k: (-ratios[k], k))
        prefs = [
            RICH_FIRST
            if service_objective(workload, s, Scenario.RICH, params)
            <= service_objective(workload, s, Scenario.SCARCE, params)
            else SCARCE_FIRST
            for s in services
        ]
        return order, prefs
    raise ValueError(f"unknown baseline {method!r}")


def baseline_allocate(
    method: Baseline | str,
    workload: Workload,
    params: ObjectiveParams = ObjectiveParams(),
    rng: Optional[np.random.Generator] = None,
) -> DecodeOutcome:
    method = Baseline(method)
    order, prefs = _order_and_preferences(method, workload, params, rng)
    return allocate(workload, order, prefs, params)
