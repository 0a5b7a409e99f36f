from __future__ import annotations

import pytest

from brad.model import (
    CopySpec,
    ResourceKindSpec,
    ResourceRequest,
    Scenario,
    ScenarioResources,
    ServiceSpec,
    Workload,
)

R, S = Scenario.RICH, Scenario.SCARCE


def kind(kind_id, rich_rate, scarce_rate, rich_copies, scarce_copies):
    return ResourceKindSpec(
        kind_id,
        {
            R: ScenarioResources(rich_rate, tuple(CopySpec(*c) for c in rich_copies)),
            S: ScenarioResources(scarce_rate, tuple(CopySpec(*c) for c in scarce_copies)),
        },
    )


def service(service_id, requests, rich_profit, scarce_profit, priority=False):
    return ServiceSpec(
        service_id,
        tuple(ResourceRequest(*r) for r in requests),
        {R: rich_profit, S: scarce_profit},
        priority,
    )


@pytest.fixture
def tiny():
    """One kind, one copy per scenario free on [0, 100); one 10-unit request."""
    return Workload(
        (kind(0, 0.5, 0.2, [(0, 100)], [(0, 100)]),),
        (service(0, [(0, 0, 10)], 10.0, 6.0),),
        100,
    )


# --- acceptance reporting -------------------------------------------------

_criteria: dict[int, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, title = marker.args
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        status = "PASS" if report.outcome == "passed" else "FAIL"
        # a criterion split over several tests fails if any of them does
        if _criteria.get(number, ("PASS",))[0] == "PASS":
            _criteria[number] = (status, title)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        status, title = _criteria[number]
        terminalreporter.write_line(f"[{status}] criterion {number}: {title}")
