"""Metric records, repeat aggregation, experiment driver and CSV output."""

from __future__ import annotations

import csv
import io
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import astuple, dataclass, fields
from typing import Iterable, Optional, Sequence

from .decoder import DecodeOutcome
from .errors import BradError
from .model import ObjectiveParams, Workload
from .optimizers import Algorithm, Baseline, RunConfig, baseline_allocate, run, substream

METRICS_SCHEMA_VERSION = 1
METRICS_HEADER_NOTE = (
    f"# brad-metrics v{METRICS_SCHEMA_VERSION}; ratio columns in aggregate rows are means of "
    "per-run ratios; utilisation is a fraction; objective_per_utilisation divides by "
    "utilisation in percent; NA marks an undefined ratio"
)
ABSENT = "NA"
AGGREGATE_SEED = "mean"

# table order used by `bench`
ALGORITHMS = ("ran", "hit-ihc", "gre-p", "gre-o", "gwo", "gwa")
METAHEURISTICS = ("gwo", "gwa")

RATIO_FIELDS = (
    "pc_ratio",
    "objective_per_allocation",
    "profit_per_allocation",
    "cost_per_allocation",
    "objective_per_utilisation",
)

# stream tag for baseline randomness, distinct from the optimizer tags
BASELINE_STREAM = 2


class UsageError(BradError, ValueError):
    """Bad request from the caller (empty input, mixed algorithms, ...)."""


@dataclass(frozen=True)
class MetricsRecord:
    algo: str
    seed: Optional[int]
    objective: float
    profit: float
    cost: float
    pc_ratio: Optional[float]
    satisfied_count: float
    utilisation: float
    objective_per_allocation: Optional[float]
    profit_per_allocation: Optional[float]
    cost_per_allocation: Optional[float]
    objective_per_utilisation: Optional[float]


COLUMNS = tuple(f.name for f in fields(MetricsRecord))


def _ratio(num: float, den: float) -> Optional[float]:
    return num / den if den > 0 else None


def compute_metrics(outcome: DecodeOutcome, algo: str = "", seed: Optional[int] = None) -> MetricsRecord:
    n = outcome.satisfied_count
    return MetricsRecord(
        algo=algo,
        seed=seed,
        objective=outcome.objective_value,
        profit=outcome.profit,
        cost=outcome.cost,
        pc_ratio=_ratio(outcome.profit, outcome.cost),
        satisfied_count=float(n),
        utilisation=outcome.utilisation,
        objective_per_allocation=_ratio(outcome.objective_value, n),
        profit_per_allocation=_ratio(outcome.profit, n),
        cost_per_allocation=_ratio(outcome.cost, n),
        objective_per_utilisation=_ratio(outcome.objective_value, 100.0 * outcome.utilisation),
    )


def _mean(values: Sequence[float]) -> float:
    return math.fsum(values) / len(values)


def aggregate(records: Sequence[MetricsRecord]) -> MetricsRecord:
    """Mean of every metric over repeats.

    Ratios are averaged per run. A ratio that is undefined in some runs is
    averaged over the runs where it is defined, and is NA if it never is.
    """
    if not records:
        raise UsageError("cannot aggregate an empty list of records")
    algos = {r.algo for r in records}
    if len(algos) != 1:
        raise UsageError(f"records mix algorithms: {sorted(algos)}")
    if len(records) == 1:
        return records[0]
    out = {"algo": records[0].algo, "seed": None}
    for name in COLUMNS[2:]:
        present = [getattr(r, name) for r in records if getattr(r, name) is not None]
        if name in RATIO_FIELDS:
            out[name] = _mean(present) if present else None
        else:
            out[name] = _mean(present)
    return MetricsRecord(**out)


def ratio_of_means(records: Sequence[MetricsRecord], num: str, den: str) -> Optional[float]:
    """Ratio of the mean numerator to the mean denominator, for comparison with `aggregate`."""
    top = _mean([getattr(r, num) for r in records])
    bottom = _mean([getattr(r, den) for r in records])
    return _ratio(top, bottom)


@dataclass(frozen=True)
class ExperimentSettings:
    agents: int = 20
    iters: int = 100
    ub: float = 10.0
    w: float = -5.0
    elimination_rule: str = "rationale"


@dataclass(frozen=True)
class RepeatResult:
    record: MetricsRecord
    history: Optional[tuple[float, ...]]


def run_repeat(workload: Workload, algo: str, seed: int, settings: ExperimentSettings) -> RepeatResult:
    if algo in METAHEURISTICS:
        cfg = RunConfig(
            nsa=settings.agents,
            max_iter=settings.iters,
            ub=settings.ub,
            w=settings.w,
            seed=seed,
            elimination_rule=settings.elimination_rule,
        )
        result = run(Algorithm(algo), workload, cfg)
        return RepeatResult(compute_metrics(result.best_outcome, algo, seed), result.history)
    outcome = baseline_allocate(
        Baseline(algo), workload, ObjectiveParams(settings.w), substream(seed, BASELINE_STREAM)
    )
    return RepeatResult(compute_metrics(outcome, algo, seed), None)


def _run_job(job):
    return run_repeat(*job)


def run_experiments(
    workload: Workload,
    algos: Iterable[str],
    seeds: Sequence[int],
    settings: ExperimentSettings = ExperimentSettings(),
    jobs: int = 1,
) -> list[RepeatResult]:
    """Every ``(algo, seed)`` pair, sorted by algorithm table order then seed."""
    tasks = [(workload, a, s, settings) for a in algos for s in seeds]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_job, tasks))
    else:
        results = [_run_job(t) for t in tasks]
    return sorted(results, key=lambda r: (_algo_rank(r.record.algo), r.record.seed))


def _algo_rank(algo: str) -> int:
    return ALGORITHMS.index(algo) if algo in ALGORITHMS else len(ALGORITHMS)


def _fmt(value) -> str:
    if value is None:
        return ABSENT
    if isinstance(value, float):
        return f"{value:.6f}"
    return str(value)


def format_row(record: MetricsRecord) -> list[str]:
    row = [_fmt(v) for v in astuple(record)]
    if record.seed is None:
        row[1] = AGGREGATE_SEED
    return row


def metrics_csv(records: Iterable[MetricsRecord]) -> str:
    buf = io.StringIO()
    buf.write(METRICS_HEADER_NOTE + "\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(COLUMNS)
    for r in records:
        writer.writerow(format_row(r))
    return buf.getvalue()


def convergence_csv(results: Iterable[RepeatResult]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(("algo", "seed", "iteration", "best_fitness"))
    for res in results:
        if res.history is None:
            continue
        for it, value in enumerate(res.history):
            writer.writerow((res.record.algo, res.record.seed, it, f"{value:.6f}"))
    return buf.getvalue()


def parse_metrics_csv(text: str) -> list[dict[str, str]]:
    lines = [ln for ln in text.splitlines() if not ln.startswith("#")]
    return list(csv.DictReader(lines))
