"""Acceptance criteria, one or more tests per criterion.

``pytest tests/test_acceptance.py`` prints a pass/fail line per criterion at the
end of the run. Criteria 4, 5 and 10 share one experiment (a few minutes on a
single core).
"""

from __future__ import annotations

import math

import numpy as np
import pytest

from brad import bench
from brad.cli import main
from brad.decoder import allocate, decode, execution_order, scenario_of
from brad.digital_object import DoRegistry
from brad.model import ObjectiveParams, Scenario, Workload, objective, service_objective, total_request_length
from brad.optimizers import (
    OptimizerState,
    delta_weight,
    elimination_threshold,
    encircling_coefficient,
    gwa_initialise,
    gwa_step,
)
from brad.optimizers import initialiser
from brad.workload_gen import GeneratorConfig, generate, save_file

from .conftest import R, S, kind, service
from .oracles import brute_force_decode, outcome_tuple, random_tiny_workload

criterion = pytest.mark.criterion

ACCEPTANCE_SEEDS = range(5)
REPEATS = 10


def acceptance_workload(seed: int) -> Workload:
    return generate(GeneratorConfig(n_services=50, n_kinds=5, copies_min=3, copies_max=10, seed=seed))


@pytest.fixture(scope="module")
def experiment():
    """Per workload seed: the repeat results of hit-ihc, gwo and gwa."""
    settings = bench.ExperimentSettings(agents=20, iters=100)
    out = {}
    for ws in ACCEPTANCE_SEEDS:
        results = bench.run_experiments(
            acceptance_workload(ws), ["hit-ihc", "gwo", "gwa"], range(REPEATS), settings
        )
        out[ws] = {a: [r for r in results if r.record.algo == a] for a in ("hit-ihc", "gwo", "gwa")}
    return out


def mean_objective(results) -> float:
    return math.fsum(r.record.objective for r in results) / len(results)


# 1 -------------------------------------------------------------------------


@criterion(1, "objective identity replays the reference cost/profit triples within 0.5")
@pytest.mark.parametrize(
    "cost,profit,printed",
    [(1570.6, 459.9, -729.0), (3416.6, 1148.9, -2328.0), (3433.5, 1290.14, -3017.2)],
    ids=["hit-ihc", "gwo", "gwa"],
)
def test_objective_identity(cost, profit, printed):
    assert abs(objective(cost, profit, ObjectiveParams(-5)) - printed) <= 0.5


# 2 -------------------------------------------------------------------------


@criterion(2, "decoder matches the brute-force booking simulator on 200 tiny instances")
def test_decoder_oracle_equivalence():
    mismatches = 0
    for k in range(200):
        rng = np.random.default_rng([2, k])
        w = random_tiny_workload(rng, max_services=4, max_kinds=2, max_copies=2)
        pos = rng.uniform(0, 10, w.n_services)
        if outcome_tuple(decode(pos, w)) != brute_force_decode(pos.tolist(), w):
            mismatches += 1
    assert mismatches == 0


# 3 -------------------------------------------------------------------------


def _violations(w: Workload, pos) -> int:
    reg = DoRegistry.from_workload(w)
    prefs = [(scenario_of(v),) for v in pos]
    out = allocate(w, execution_order(pos), prefs, registry=reg)
    bad = int(reg.total_booked() != total_request_length(w, out.allocation))
    for d in reg:
        bad += not d.timeline.is_consistent()
        ivs = sorted(d.bookings)
        bad += any(a[1] > b[0] for a, b in zip(ivs, ivs[1:]))
        bad += any(s < d.up or f > d.down for s, f in ivs)
    return bad


@criterion(3, "1000 random decodes conserve booked time and keep timelines disjoint")
def test_atomicity_conservation():
    medium = [generate(GeneratorConfig(n_services=25, n_kinds=3, copies_min=1, copies_max=4, seed=s)) for s in range(4)]
    violations = 0
    for k in range(1000):
        rng = np.random.default_rng([3, k])
        if k % 2:
            w = random_tiny_workload(rng, max_services=8, max_kinds=3, max_copies=3, horizon=30)
        else:
            w = medium[k % 4]
        violations += _violations(w, rng.uniform(0, 10, w.n_services))
    assert violations == 0


# 4, 5, 10 ------------------------------------------------------------------


@pytest.mark.slow
@criterion(4, "gwa mean objective below gwo on every workload, aggregate reduction >= 5%")
def test_gwa_beats_gwo(experiment):
    gwa = [mean_objective(experiment[ws]["gwa"]) for ws in ACCEPTANCE_SEEDS]
    gwo = [mean_objective(experiment[ws]["gwo"]) for ws in ACCEPTANCE_SEEDS]
    for ws, a, o in zip(ACCEPTANCE_SEEDS, gwa, gwo):
        print(f"workload {ws}: gwa {a:.3f} gwo {o:.3f} reduction {(o - a) / abs(o):.2%}")
    assert all(a < o for a, o in zip(gwa, gwo))
    reduction = (math.fsum(gwo) - math.fsum(gwa)) / abs(math.fsum(gwo))
    print(f"aggregate reduction {reduction:.2%}")
    assert reduction >= 0.05


@pytest.mark.slow
@criterion(5, "gwa mean objective below hit-ihc on every workload")
def test_gwa_beats_hit_ihc(experiment):
    for ws in ACCEPTANCE_SEEDS:
        gwa = mean_objective(experiment[ws]["gwa"])
        hit = mean_objective(experiment[ws]["hit-ihc"])
        print(f"workload {ws}: gwa {gwa:.3f} hit-ihc {hit:.3f} ratio {gwa / hit:.2f}")
        assert gwa < hit


@pytest.mark.slow
@criterion(10, "best-so-far histories never increase for gwa and gwo")
def test_histories_monotone(experiment):
    for ws in ACCEPTANCE_SEEDS:
        for algo in ("gwo", "gwa"):
            for res in experiment[ws][algo]:
                h = res.history
                assert len(h) == 101
                assert all(b <= a for a, b in zip(h, h[1:])), (ws, algo, res.record.seed)


# 6 -------------------------------------------------------------------------


@criterion(6, "coefficient, delta weight and threshold schedules hit their endpoints exactly")
@pytest.mark.parametrize("mi,bl", [(100, 0), (100, 37), (7, 6), (1, 0)])
def test_schedule_endpoints(mi, bl):
    assert encircling_coefficient(bl, mi, bl) == 2
    assert encircling_coefficient(mi, mi, bl) == 0
    assert delta_weight(bl, mi, bl) == 1
    assert delta_weight(mi, mi, bl) == 0
    assert elimination_threshold(0, mi) == 0
    assert elimination_threshold(mi, mi) == 1


# 7 -------------------------------------------------------------------------


@criterion(7, "greedy hierarchy choice dominates all four candidates on 100 events")
def test_greedy_dominance():
    w = acceptance_workload(0)
    params = ObjectiveParams()

    def fit(x):
        return decode(x, w, params).objective_value

    pop = gwa_initialise(20, w, 10.0, params, np.random.default_rng(70))
    state = OptimizerState(pop, [fit(p) for p in pop], max_iter=30, seed=70, ub=10.0)
    events = []
    for _ in range(30):
        gwa_step(state, fit, on_update=events.append)
    picks = np.random.default_rng(7).choice(len(events), size=100, replace=False)
    sampled = [events[int(i)] for i in picks]
    assert len({(e.iteration, e.wolf) for e in sampled}) == 100
    violations = sum(any(e.chosen_fitness > f for f in e.candidate_fitness) for e in sampled)
    assert violations == 0


# 8 -------------------------------------------------------------------------


def hand_workload() -> Workload:
    return Workload(
        (kind(0, 0.1, 1.0, [(0, 100)], [(0, 100)]),),
        (
            service(0, [(0, 0, 10)], 10, 10),
            service(1, [(0, 0, 10)], 1, 20),
            service(2, [(0, 0, 10)], 5, 5.2),
        ),
        100,
    )


@criterion(8, "initialiser count, range and half placement")
@pytest.mark.parametrize("nsa", [8, 20, 21])
def test_initialiser_count_range(nsa):
    w = acceptance_workload(1)
    pop = gwa_initialise(nsa, w, 10.0, ObjectiveParams(), np.random.default_rng(nsa))
    assert pop.shape == (nsa, w.n_services)
    assert pop.min() >= 0 and pop.max() <= 10


@criterion(8, "initialiser count, range and half placement")
def test_initialiser_half_placement():
    w = hand_workload()
    # direct arithmetic, length 10: Rich 10*0.1 - 5p, Scarce 10*1.0 - 5p
    rich = [1 - 50, 1 - 5, 1 - 25]
    scarce = [10 - 50, 10 - 100, 10 - 26]
    for n, svc in enumerate(w.services):
        assert service_objective(w, svc, R, ObjectiveParams()) == pytest.approx(rich[n])
        assert service_objective(w, svc, S, ObjectiveParams()) == pytest.approx(scarce[n])
    pop = gwa_initialise(20, w, 10.0, ObjectiveParams(), np.random.default_rng(8))
    for n in range(3):
        lower = rich[n] <= scarce[n]
        assert all((scenario_of(v) is Scenario.RICH) == lower for v in pop[:, n])


@criterion(8, "initialiser count, range and half placement")
def test_initialiser_oversamples_then_merges(monkeypatch):
    seen = []
    original = initialiser.merge_closest

    def spy(vectors, target):
        seen.append((len(vectors), target))
        return original(vectors, target)

    monkeypatch.setattr(initialiser, "merge_closest", spy)
    gwa_initialise(20, hand_workload(), 10.0, ObjectiveParams(), np.random.default_rng(0))
    assert seen == [(30, 20)]


# 9 -------------------------------------------------------------------------


@criterion(9, "bench twice with the same flags writes byte-identical CSV")
def test_bench_determinism(tmp_path):
    wpath = tmp_path / "w.json"
    save_file(generate(GeneratorConfig(n_services=20, n_kinds=3, copies_min=3, copies_max=6, seed=9)), wpath)
    outputs = []
    for name in ("a.csv", "b.csv"):
        out = tmp_path / name
        argv = ["bench", str(wpath), "--agents", "8", "--iters", "10", "--repeats", "3", "--seed", "4"]
        assert main([*argv, "--out", str(out)]) == 0
        outputs.append(out.read_bytes())
    assert outputs[0] == outputs[1]
    assert len(outputs[0].decode().splitlines()) == 2 + len(bench.ALGORITHMS)
