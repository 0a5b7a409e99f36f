"""Seeded synthetic workloads and the JSON workload file format.

File layout (``format: "brad-workload"``, ``version: 1``)::

    {
      "format": "brad-workload",
      "version": 1,
      "horizon": 1000,
      "generator": {...} | null,
      "kinds": [
        {"kind_id": 0,
         "rich":   {"cost_rate": 0.02, "copies": [{"up": 0, "down": 900}, ...]},
         "scarce": {"cost_rate": 0.03, "copies": [...]}}
      ],
      "services": [
        {"service_id": 0, "priority": false,
         "profit": {"rich": 12.5, "scarce": 10.0},
         "requests": [{"kind_id": 0, "start": 10, "finish": 120}]}
      ]
    }

Keys are written sorted; money values are rounded to ``MONEY_DECIMALS``.
"""

from __future__ import annotations

import dataclasses
import json
import logging
import math
from dataclasses import dataclass
from typing import Any, Optional

import numpy as np

from .errors import ConfigurationError, ValidationError, WorkloadFormatError
from .model import (
    SCENARIOS,
    CopySpec,
    ResourceKindSpec,
    ResourceRequest,
    Scenario,
    ScenarioResources,
    ServiceSpec,
    Workload,
    scenario_capacity,
    total_demand,
)

log = logging.getLogger(__name__)

FORMAT_TAG = "brad-workload"
FORMAT_VERSION = 1
MONEY_DECIMALS = 6


@dataclass(frozen=True)
class GeneratorConfig:
    n_services: int = 200
    n_kinds: int = 10
    copies_min: int = 3
    copies_max: int = 50
    horizon: int = 1000
    # None means "up to every kind"
    request_kinds_max: Optional[int] = None
    duration_min: int = 150
    duration_max: int = 550
    rich_cost_range: tuple[float, float] = (0.01, 0.04)
    scarce_cost_multiplier_range: tuple[float, float] = (1.0, 1.5)
    profit_range: tuple[float, float] = (5.0, 25.0)
    scarce_profit_multiplier_range: tuple[float, float] = (0.8, 1.2)
    priority_fraction: float = 0.3
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "rich_cost_range", tuple(self.rich_cost_range))
        object.__setattr__(self, "scarce_cost_multiplier_range", tuple(self.scarce_cost_multiplier_range))
        object.__setattr__(self, "profit_range", tuple(self.profit_range))
        object.__setattr__(self, "scarce_profit_multiplier_range", tuple(self.scarce_profit_multiplier_range))
        if self.n_services < 1:
            raise ConfigurationError("n_services must be >= 1")
        if self.n_kinds < 1:
            raise ConfigurationError("n_kinds must be >= 1")
        if not 1 <= self.copies_min <= self.copies_max:
            raise ConfigurationError("need 1 <= copies_min <= copies_max")
        if self.horizon < 2:
            raise ConfigurationError("horizon must be >= 2")
        if self.request_kinds_max is not None and not 1 <= self.request_kinds_max <= self.n_kinds:
            raise ConfigurationError("request_kinds_max must lie in [1, n_kinds]")
        if not 1 <= self.duration_min <= self.duration_max:
            raise ConfigurationError("need 1 <= duration_min <= duration_max")
        if self.duration_max > self.horizon:
            raise ConfigurationError(
                f"duration_max {self.duration_max} exceeds horizon {self.horizon}"
            )
        for name in (
            "rich_cost_range",
            "scarce_cost_multiplier_range",
            "profit_range",
            "scarce_profit_multiplier_range",
        ):
            lo, hi = getattr(self, name)
            if not 0 <= lo <= hi:
                raise ConfigurationError(f"{name}: need 0 <= low <= high, got {(lo, hi)}")
        if not 0.0 <= self.priority_fraction <= 1.0:
            raise ConfigurationError("priority_fraction must lie in [0, 1]")

    @property
    def max_request_kinds(self) -> int:
        return self.n_kinds if self.request_kinds_max is None else self.request_kinds_max

    def to_dict(self) -> dict[str, Any]:
        d = dataclasses.asdict(self)
        return {k: list(v) if isinstance(v, tuple) else v for k, v in d.items()}


def _money(x: float) -> float:
    return round(float(x), MONEY_DECIMALS)


def generate(cfg: GeneratorConfig = GeneratorConfig()) -> Workload:
    rng = np.random.default_rng(cfg.seed)
    horizon = cfg.horizon
    min_span = math.ceil(horizon / 2)

    kinds = []
    for m in range(cfg.n_kinds):
        rich_rate = _money(rng.uniform(*cfg.rich_cost_range))
        rates = {
            Scenario.RICH: rich_rate,
            Scenario.SCARCE: _money(rich_rate * rng.uniform(*cfg.scarce_cost_multiplier_range)),
        }
        per = {}
        for s in SCENARIOS:
            count = int(rng.integers(cfg.copies_min, cfg.copies_max + 1))
            copies = []
            for _ in range(count):
                span = int(rng.integers(min_span, horizon + 1))
                up = int(rng.integers(0, horizon - span + 1))
                copies.append(CopySpec(up, up + span))
            per[s] = ScenarioResources(rates[s], tuple(copies))
        kinds.append(ResourceKindSpec(m, per))

    services = []
    for n in range(cfg.n_services):
        k = int(rng.integers(1, cfg.max_request_kinds + 1))
        chosen = sorted(rng.choice(cfg.n_kinds, size=k, replace=False).tolist())
        reqs = []
        for kind_id in chosen:
            d = int(rng.integers(cfg.duration_min, cfg.duration_max + 1))
            start = int(rng.integers(0, horizon - d + 1))
            reqs.append(ResourceRequest(int(kind_id), start, start + d))
        rich_profit = _money(rng.uniform(*cfg.profit_range))
        profit = {
            Scenario.RICH: rich_profit,
            Scenario.SCARCE: _money(rich_profit * rng.uniform(*cfg.scarce_profit_multiplier_range)),
        }
        priority = bool(rng.random() < cfg.priority_fraction)
        services.append(ServiceSpec(n, tuple(reqs), profit, priority))

    workload = Workload(tuple(kinds), tuple(services), horizon, generator=cfg.to_dict())
    demand = total_demand(workload)
    capacity = max(scenario_capacity(workload, s) for s in SCENARIOS)
    if demand <= 1.2 * capacity:
        log.warning(
            "aggregate demand %d is not above 1.2x the larger scenario capacity %d; "
            "contention may be light",
            demand,
            capacity,
        )
    return workload


def to_document(workload: Workload) -> dict[str, Any]:
    kinds = []
    for kind in workload.kinds:
        entry: dict[str, Any] = {"kind_id": kind.kind_id}
        for s in SCENARIOS:
            res = kind.per_scenario[s]
            entry[s.value] = {
                "cost_rate": _money(res.cost_rate),
                "copies": [{"up": c.up, "down": c.down} for c in res.copies],
            }
        kinds.append(entry)
    services = [
        {
            "service_id": svc.service_id,
            "priority": svc.priority,
            "profit": {s.value: _money(svc.profit[s]) for s in SCENARIOS},
            "requests": [
                {"kind_id": r.kind_id, "start": r.start, "finish": r.finish} for r in svc.requests
            ],
        }
        for svc in workload.services
    ]
    return {
        "format": FORMAT_TAG,
        "version": FORMAT_VERSION,
        "horizon": workload.horizon,
        "generator": dict(workload.generator) if workload.generator is not None else None,
        "kinds": kinds,
        "services": services,
    }


def persist(workload: Workload) -> bytes:
    text = json.dumps(to_document(workload), sort_keys=True, indent=1)
    return (text + "\n").encode("utf-8")


def _get(obj: Any, key: str, path: str) -> Any:
    if not isinstance(obj, dict):
        raise ValidationError(f"{path}: expected an object")
    if key not in obj:
        raise ValidationError(f"{path}.{key}: missing")
    return obj[key]


def _list(obj: Any, key: str, path: str) -> list:
    value = _get(obj, key, path)
    if not isinstance(value, list):
        raise ValidationError(f"{path}.{key}: expected a list")
    return value


def _number(value: Any, path: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ValidationError(f"{path}: expected a number, got {value!r}")
    return float(value)


def _wrap(path: str, build):
    try:
        return build()
    except ValidationError as exc:
        raise ValidationError(f"{path}: {exc}") from None


def from_document(doc: Any) -> Workload:
    if _get(doc, "format", "$") != FORMAT_TAG:
        raise ValidationError(f"$.format: expected {FORMAT_TAG!r}")
    version = _get(doc, "version", "$")
    if version != FORMAT_VERSION:
        raise ValidationError(f"$.version: unsupported version {version!r}")

    kinds = []
    for m, raw in enumerate(_list(doc, "kinds", "$")):
        path = f"$.kinds[{m}]"
        per = {}
        for s in SCENARIOS:
            sp = f"{path}.{s.value}"
            block = _get(raw, s.value, path)
            rate = _number(_get(block, "cost_rate", sp), f"{sp}.cost_rate")
            copies = []
            for j, c in enumerate(_list(block, "copies", sp)):
                cp = f"{sp}.copies[{j}]"
                up, down = _get(c, "up", cp), _get(c, "down", cp)
                copies.append(_wrap(cp, lambda: CopySpec(up, down)))
            per[s] = _wrap(sp, lambda: ScenarioResources(rate, tuple(copies)))
        kind_id = _get(raw, "kind_id", path)
        kinds.append(_wrap(path, lambda: ResourceKindSpec(kind_id, per)))

    services = []
    for n, raw in enumerate(_list(doc, "services", "$")):
        path = f"$.services[{n}]"
        profit_raw = _get(raw, "profit", path)
        profit = {
            s: _number(_get(profit_raw, s.value, f"{path}.profit"), f"{path}.profit.{s.value}")
            for s in SCENARIOS
        }
        reqs = []
        for i, r in enumerate(_list(raw, "requests", path)):
            rp = f"{path}.requests[{i}]"
            args = (_get(r, "kind_id", rp), _get(r, "start", rp), _get(r, "finish", rp))
            reqs.append(_wrap(rp, lambda: ResourceRequest(*args)))
        priority = raw.get("priority", False)
        if not isinstance(priority, bool):
            raise ValidationError(f"{path}.priority: expected a boolean")
        sid = _get(raw, "service_id", path)
        services.append(_wrap(path, lambda: ServiceSpec(sid, tuple(reqs), profit, priority)))

    generator = doc.get("generator")
    horizon = _get(doc, "horizon", "$")
    return _wrap("$", lambda: Workload(tuple(kinds), tuple(services), horizon, generator=generator))


def load(data: bytes | str) -> Workload:
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise WorkloadFormatError(exc.msg, exc.lineno, exc.colno) from None
    return from_document(doc)


def save_file(workload: Workload, path) -> None:
    with open(path, "wb") as fh:
        fh.write(persist(workload))


def load_file(path) -> Workload:
    with open(path, "rb") as fh:
        return load(fh.read())
