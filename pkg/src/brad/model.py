"""Domain types for the two-scenario allocation model and its profit/cost arithmetic.

Time is an integer count of abstract units. Money and cost rates are floats.
All types are frozen; validation happens in ``__post_init__``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Any, Mapping, Optional

from .errors import StructuralError, ValidationError


class Scenario(str, enum.Enum):
    RICH = "rich"
    SCARCE = "scarce"

    @property
    def other(self) -> "Scenario":
        return Scenario.SCARCE if self is Scenario.RICH else Scenario.RICH


SCENARIOS: tuple[Scenario, Scenario] = (Scenario.RICH, Scenario.SCARCE)


def _require_int(value: Any, name: str) -> None:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ValidationError(f"{name}: expected an integer, got {value!r}")


@dataclass(frozen=True)
class CopySpec:
    """Up/down window of a single resource copy."""

    up: int
    down: int

    def __post_init__(self):
        _require_int(self.up, "up")
        _require_int(self.down, "down")
        if self.up < 0 or self.up >= self.down:
            raise ValidationError(f"copy: need 0 <= up < down, got up={self.up}, down={self.down}")

    @property
    def span(self) -> int:
        return self.down - self.up


@dataclass(frozen=True)
class ScenarioResources:
    """Copies of one resource kind inside one scenario.

    Every copy of a kind in a scenario shares the same cost rate, so the rate
    lives here rather than on the copy.
    """

    cost_rate: float
    copies: tuple[CopySpec, ...]

    def __post_init__(self):
        object.__setattr__(self, "copies", tuple(self.copies))
        if not self.copies:
            raise ValidationError("copies: at least one copy is required")
        if not self.cost_rate >= 0:
            raise ValidationError(f"cost_rate: must be nonnegative, got {self.cost_rate!r}")

    @property
    def copy_count(self) -> int:
        return len(self.copies)


@dataclass(frozen=True)
class ResourceKindSpec:
    kind_id: int
    per_scenario: Mapping[Scenario, ScenarioResources]

    def __post_init__(self):
        _require_int(self.kind_id, "kind_id")
        missing = [s.value for s in SCENARIOS if s not in self.per_scenario]
        if missing:
            raise ValidationError(f"kind {self.kind_id}: missing scenario(s) {missing}")
        object.__setattr__(self, "per_scenario", {s: self.per_scenario[s] for s in SCENARIOS})

    def in_scenario(self, scenario: Scenario) -> ScenarioResources:
        return self.per_scenario[scenario]

    def __hash__(self):
        return hash((self.kind_id, tuple(self.per_scenario[s] for s in SCENARIOS)))


@dataclass(frozen=True)
class ResourceRequest:
    kind_id: int
    start: int
    finish: int

    def __post_init__(self):
        _require_int(self.kind_id, "kind_id")
        _require_int(self.start, "start")
        _require_int(self.finish, "finish")
        if self.start >= self.finish:
            raise ValidationError(
                f"request: start must precede finish, got [{self.start}, {self.finish})"
            )

    @property
    def length(self) -> int:
        return self.finish - self.start


def utilisation_length(request: ResourceRequest) -> int:
    """Length of the utilisation window of ``request``."""
    return request.finish - request.start


@dataclass(frozen=True)
class ServiceSpec:
    service_id: int
    requests: tuple[ResourceRequest, ...]
    profit: Mapping[Scenario, float]
    priority: bool = False

    def __post_init__(self):
        _require_int(self.service_id, "service_id")
        object.__setattr__(self, "requests", tuple(self.requests))
        if not self.requests:
            raise ValidationError(f"service {self.service_id}: requests must be nonempty")
        kinds = [r.kind_id for r in self.requests]
        if len(set(kinds)) != len(kinds):
            raise ValidationError(f"service {self.service_id}: duplicate request kinds {kinds}")
        for s in SCENARIOS:
            if s not in self.profit:
                raise ValidationError(f"service {self.service_id}: profit.{s.value} missing")
            if not self.profit[s] >= 0:
                raise ValidationError(
                    f"service {self.service_id}: profit.{s.value} must be nonnegative"
                )
        object.__setattr__(self, "profit", {s: float(self.profit[s]) for s in SCENARIOS})

    def __hash__(self):
        return hash((self.service_id, self.requests, tuple(self.profit[s] for s in SCENARIOS)))

    @property
    def max_profit(self) -> float:
        return max(self.profit.values())


@dataclass(frozen=True)
class Workload:
    kinds: tuple[ResourceKindSpec, ...]
    services: tuple[ServiceSpec, ...]
    horizon: int
    # generator settings echoed into persisted files; not part of identity
    generator: Optional[Mapping[str, Any]] = field(default=None, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "kinds", tuple(self.kinds))
        object.__setattr__(self, "services", tuple(self.services))
        _require_int(self.horizon, "horizon")
        if self.horizon <= 0:
            raise ValidationError("horizon: must be positive")
        for m, kind in enumerate(self.kinds):
            if kind.kind_id != m:
                raise ValidationError(f"kinds[{m}].kind_id: expected {m}, got {kind.kind_id}")
            for s in SCENARIOS:
                for j, c in enumerate(kind.per_scenario[s].copies):
                    if c.down > self.horizon:
                        raise ValidationError(
                            f"kinds[{m}].{s.value}.copies[{j}].down: exceeds horizon {self.horizon}"
                        )
        for n, svc in enumerate(self.services):
            if svc.service_id != n:
                raise ValidationError(f"services[{n}].service_id: expected {n}, got {svc.service_id}")
            for i, r in enumerate(svc.requests):
                if not 0 <= r.kind_id < len(self.kinds):
                    raise ValidationError(
                        f"services[{n}].requests[{i}].kind_id: unknown kind {r.kind_id}"
                    )
                if r.start < 0 or r.finish > self.horizon:
                    raise ValidationError(
                        f"services[{n}].requests[{i}]: window outside [0, {self.horizon}]"
                    )

    @property
    def n_services(self) -> int:
        return len(self.services)

    @property
    def n_kinds(self) -> int:
        return len(self.kinds)

    def cost_rate(self, kind_id: int, scenario: Scenario) -> float:
        return self.kinds[kind_id].per_scenario[scenario].cost_rate


@dataclass(frozen=True)
class Satisfied:
    """A service served entirely from ``scenario``; ``copies[i]`` serves request ``i``."""

    scenario: Scenario
    copies: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "copies", tuple(self.copies))


@dataclass(frozen=True)
class Allocation:
    """Per-service outcome. ``None`` marks an unsatisfied service."""

    per_service: tuple[Optional[Satisfied], ...]

    def __post_init__(self):
        object.__setattr__(self, "per_service", tuple(self.per_service))

    @classmethod
    def empty(cls, n_services: int) -> "Allocation":
        return cls((None,) * n_services)

    @property
    def satisfied_count(self) -> int:
        return sum(1 for a in self.per_service if a is not None)

    def is_satisfied(self, service: int, scenario: Scenario) -> bool:
        a = self.per_service[service]
        return a is not None and a.scenario is scenario


@dataclass(frozen=True)
class ObjectiveParams:
    w: float = -5.0

    def __post_init__(self):
        if not self.w < 0:
            raise ValidationError(f"w: balancing factor must be negative, got {self.w!r}")


def _check_aligned(workload: Workload, alloc: Allocation) -> None:
    if len(alloc.per_service) != len(workload.services):
        raise StructuralError(
            f"allocation has {len(alloc.per_service)} entries for {len(workload.services)} services"
        )


def service_cost(workload: Workload, service: ServiceSpec, scenario: Scenario) -> float:
    """Cost of running every request of ``service`` in ``scenario``, ignoring contention."""
    total = 0.0
    for r in service.requests:
        if not 0 <= r.kind_id < len(workload.kinds):
            raise StructuralError(f"service {service.service_id}: unknown kind {r.kind_id}")
        total += (r.finish - r.start) * workload.kinds[r.kind_id].per_scenario[scenario].cost_rate
    return total


def service_objective(
    workload: Workload, service: ServiceSpec, scenario: Scenario, params: ObjectiveParams
) -> float:
    """Contention-free objective of satisfying ``service`` alone in ``scenario``."""
    return service_cost(workload, service, scenario) + params.w * service.profit[scenario]


def allocation_profit(workload: Workload, alloc: Allocation) -> float:
    _check_aligned(workload, alloc)
    return sum(
        svc.profit[a.scenario]
        for svc, a in zip(workload.services, alloc.per_service)
        if a is not None
    )


def allocation_cost(workload: Workload, alloc: Allocation) -> float:
    _check_aligned(workload, alloc)
    total = 0.0
    for svc, a in zip(workload.services, alloc.per_service):
        if a is None:
            continue
        if len(a.copies) != len(svc.requests):
            raise StructuralError(
                f"service {svc.service_id}: {len(a.copies)} copy indices for "
                f"{len(svc.requests)} requests"
            )
        for r, j in zip(svc.requests, a.copies):
            res = workload.kinds[r.kind_id].per_scenario[a.scenario]
            if not 0 <= j < res.copy_count:
                raise StructuralError(
                    f"service {svc.service_id}: copy {j} invalid for kind {r.kind_id} "
                    f"in {a.scenario.value}"
                )
        total += service_cost(workload, svc, a.scenario)
    return total


def objective(cost: float, profit: float, params: ObjectiveParams = ObjectiveParams()) -> float:
    """Bimetric objective ``cost + w * profit``; lower is better."""
    return cost + params.w * profit


def total_request_length(workload: Workload, alloc: Allocation) -> int:
    _check_aligned(workload, alloc)
    return sum(
        r.finish - r.start
        for svc, a in zip(workload.services, alloc.per_service)
        if a is not None
        for r in svc.requests
    )


def scenario_capacity(workload: Workload, scenario: Scenario) -> int:
    return sum(c.span for k in workload.kinds for c in k.per_scenario[scenario].copies)


def total_demand(workload: Workload) -> int:
    return sum(r.finish - r.start for s in workload.services for r in s.requests)

