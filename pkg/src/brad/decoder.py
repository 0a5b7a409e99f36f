"""Position-vector decoding: scenario choice, execution order, atomic booking, fitness."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .digital_object import DoRegistry
from .errors import ContractViolation, StructuralError
from .model import (
    Allocation,
    ObjectiveParams,
    Satisfied,
    Scenario,
    ServiceSpec,
    Workload,
    service_cost,
)

DEFAULT_UB = 10.0


@dataclass(frozen=True)
class DecodeOutcome:
    allocation: Allocation
    profit: float
    cost: float
    objective_value: float
    satisfied_count: int
    utilisation: float


def scenario_of(value: float, ub: float = DEFAULT_UB) -> Scenario:
    """Rich for the lower half ``[0, ub/2)``, Scarce for ``[ub/2, ub]``."""
    if not 0.0 <= value <= ub:
        raise ContractViolation(f"gene {value!r} outside [0, {ub}]")
    return Scenario.RICH if value < ub / 2 else Scenario.SCARCE


def execution_order(position: Sequence[float]) -> list[int]:
    """Service indices by ascending gene value; equal genes keep index order."""
    return np.argsort(np.asarray(position, dtype=float), kind="stable").tolist()


def book_service(registry: DoRegistry, service: ServiceSpec, scenario: Scenario) -> Optional[Satisfied]:
    """Book every request of ``service`` in ``scenario`` or none of them."""
    copies = []
    for r in service.requests:
        j = registry.collaborate_book(scenario, r.kind_id, r.start, r.finish)
        if j is None:
            for done, jj in zip(service.requests, copies):
                registry.get(scenario, done.kind_id, jj).cancel_booking(done.start, done.finish)
            return None
        copies.append(j)
    return Satisfied(scenario, tuple(copies))


def allocate(
    workload: Workload,
    order: Sequence[int],
    preferences: Sequence[Sequence[Scenario]],
    params: ObjectiveParams = ObjectiveParams(),
    registry: Optional[DoRegistry] = None,
) -> DecodeOutcome:
    """Serve services in ``order``, trying each service's scenarios in preference order.

    ``preferences[n]`` lists the scenarios service ``n`` may use; the first one
    that accepts the whole service wins. A fresh registry is built unless one
    is passed in, in which case it is mutated.
    """
    if registry is None:
        registry = DoRegistry.from_workload(workload)
    services = workload.services
    result: list[Optional[Satisfied]] = [None] * len(services)
    for n in order:
        for scenario in preferences[n]:
            got = book_service(registry, services[n], scenario)
            if got is not None:
                result[n] = got
                break
    # summed in service order so totals match allocation_profit/allocation_cost bit for bit
    profit = 0.0
    cost = 0.0
    for svc, a in zip(services, result):
        if a is not None:
            profit += svc.profit[a.scenario]
            cost += service_cost(workload, svc, a.scenario)
    alloc = Allocation(tuple(result))
    return DecodeOutcome(
        allocation=alloc,
        profit=profit,
        cost=cost,
        objective_value=cost + params.w * profit,
        satisfied_count=alloc.satisfied_count,
        utilisation=registry.utilisation(),
    )


def decode(
    position: Sequence[float],
    workload: Workload,
    params: ObjectiveParams = ObjectiveParams(),
    ub: float = DEFAULT_UB,
) -> DecodeOutcome:
    pos = np.asarray(position, dtype=float)
    if pos.shape != (len(workload.services),):
        raise StructuralError(
            f"position has shape {pos.shape}, workload has {len(workload.services)} services"
        )
    # no fallback: the gene alone fixes the scenario
    prefs = [(scenario_of(v, ub),) for v in pos.tolist()]
    return allocate(workload, execution_order(pos), prefs, params)


def fitness(
    position: Sequence[float],
    workload: Workload,
    params: ObjectiveParams = ObjectiveParams(),
    ub: float = DEFAULT_UB,
) -> float:
    return decode(position, workload, params, ub).objective_value
