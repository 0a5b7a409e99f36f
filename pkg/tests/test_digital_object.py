import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from brad.digital_object import AvailabilityTimeline, DigitalObject, DoRegistry
from brad.errors import ContractViolation, StructuralError
from brad.model import Scenario, Workload

from .conftest import R, S, kind, service


def fresh(up=0, down=100, rate=0.5):
    return DigitalObject(0, R, 0, up, down, rate)


def test_show_availability_fresh():
    assert fresh().show_availability() == [(0, 100)]


def test_show_availability_after_split():
    d = fresh()
    assert d.try_book(10, 20)
    assert d.show_availability() == [(0, 10), (20, 100)]


def test_full_span_booking_empties():
    d = fresh()
    assert d.try_book(0, 100)
    assert d.show_availability() == []


def test_utilisation_cost_accessor():
    assert fresh(rate=0.5).show_utilisation_cost() == 0.5


def test_rates_shared_within_scenario_but_not_across():
    w = Workload((kind(0, 0.5, 0.9, [(0, 10), (0, 10)], [(0, 10)]),), (service(0, [(0, 0, 1)], 1, 1),), 10)
    reg = DoRegistry.from_workload(w)
    r0, r1 = reg.get(R, 0, 0), reg.get(R, 0, 1)
    assert r0.show_utilisation_cost() == r1.show_utilisation_cost() == 0.5
    assert reg.get(S, 0, 0).show_utilisation_cost() == 0.9


def test_refused_when_not_contained():
    d = fresh()
    assert not d.try_book(90, 110)
    assert d.show_availability() == [(0, 100)]


def test_refused_across_gap():
    d = fresh()
    d.try_book(10, 20)
    # every point of [5, 25) is checked by the brute-force model below
    busy = set(range(10, 20))
    assert any(t in busy for t in range(5, 25))
    assert not d.try_book(5, 25)
    assert d.show_availability() == [(0, 10), (20, 100)]


def test_back_to_back_bookings_do_not_conflict():
    d = fresh()
    assert d.try_book(0, 10)
    assert d.try_book(10, 20)


def test_cancel_restores():
    d = fresh()
    d.try_book(10, 20)
    d.cancel_booking(10, 20)
    assert d.show_availability() == [(0, 100)]
    assert d.booked == 0


def test_cancel_coalesces():
    d = fresh()
    d.try_book(0, 50)
    d.try_book(50, 100)
    d.cancel_booking(0, 50)
    d.cancel_booking(50, 100)
    assert d.show_availability() == [(0, 100)]


def test_cancel_without_booking_fails():
    with pytest.raises(ContractViolation):
        fresh().cancel_booking(10, 20)


def registry_two_copies():
    w = Workload((kind(0, 1, 1, [(0, 100), (0, 100)], [(0, 100)]),), (service(0, [(0, 0, 1)], 1, 1),), 100)
    return DoRegistry.from_workload(w)


def test_collaborate_moves_to_next_copy():
    reg = registry_two_copies()
    reg.get(R, 0, 0).try_book(10, 20)
    # brute force over both copies: the first whose free points cover [12, 18)
    def covers(d):
        free = {t for lo, hi in d.show_availability() for t in range(lo, hi)}
        return set(range(12, 18)) <= free

    expected = next(j for j in (0, 1) if covers(reg.get(R, 0, j)))
    assert expected == 1
    assert reg.collaborate_book(R, 0, 12, 18) == expected


def test_collaborate_refuses_when_all_busy():
    reg = registry_two_copies()
    assert reg.collaborate_book(R, 0, 0, 100) == 0
    assert reg.collaborate_book(R, 0, 0, 100) == 1
    assert reg.collaborate_book(R, 0, 50, 60) is None


def test_collaborate_single_copy():
    reg = registry_two_copies()
    assert reg.collaborate_book(S, 0, 0, 10) == 0


def test_collaborate_unknown_kind():
    with pytest.raises(StructuralError):
        registry_two_copies().collaborate_book(R, 7, 0, 10)


def test_clone_is_independent():
    reg = registry_two_copies()
    other = reg.clone()
    other.collaborate_book(R, 0, 0, 100)
    assert reg.get(R, 0, 0).show_availability() == [(0, 100)]


ops = st.lists(
    st.tuples(st.booleans(), st.integers(0, 40), st.integers(1, 15)),
    max_size=40,
)


@settings(max_examples=300)
@given(st.integers(0, 10), st.integers(11, 40), ops)
def test_timeline_against_point_model(up, down, operations):
    d = DigitalObject(0, Scenario.RICH, 0, up, down, 1.0)
    busy = set()
    live = []
    for is_book, a, length in operations:
        if is_book or not live:
            start, finish = a, a + length
            expect = all(up <= t < down and t not in busy for t in range(start, finish))
            before = d.show_availability()
            assert d.try_book(start, finish) == expect
            if expect:
                busy.update(range(start, finish))
                live.append((start, finish))
            else:
                assert d.show_availability() == before
        else:
            start, finish = live.pop(a % len(live))
            d.cancel_booking(start, finish)
            busy.difference_update(range(start, finish))
        assert d.timeline.is_consistent()
        assert d.booked + d.timeline.free_length == d.timeline.initial_span
        free_points = {t for lo, hi in d.show_availability() for t in range(lo, hi)}
        assert free_points == set(range(up, down)) - busy


@given(st.integers(0, 30), st.integers(1, 20), st.integers(0, 50), st.integers(1, 20))
def test_book_cancel_round_trip(a, la, b, lb):
    d = fresh()
    d.try_book(a, a + la)
    before = d.show_availability()
    if d.try_book(b, b + lb):
        d.cancel_booking(b, b + lb)
    assert d.show_availability() == before


def test_timeline_rejects_empty_span():
    with pytest.raises(ContractViolation):
        AvailabilityTimeline(5, 5)
