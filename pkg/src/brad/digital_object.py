"""Per-copy availability calendars and same-kind booking collaboration.

Each resource copy is wrapped in a :class:`DigitalObject` that answers
availability and cost queries and accepts or refuses bookings. A
:class:`DoRegistry` holds every copy of every kind in both scenarios and
routes a request to the first copy that can take it.

Intervals are half-open ``[lo, hi)`` so back-to-back bookings do not clash.
"""

from __future__ import annotations

from bisect import bisect_right
from typing import Iterator, Optional

from .errors import ContractViolation, StructuralError
from .model import SCENARIOS, Scenario, Workload


class AvailabilityTimeline:
    """Sorted list of disjoint, nonempty free intervals."""

    __slots__ = ("_lo", "_hi", "initial_span")

    def __init__(self, up: int, down: int):
        if up >= down:
            raise ContractViolation(f"timeline needs up < down, got [{up}, {down})")
        self._lo = [up]
        self._hi = [down]
        self.initial_span = down - up

    def copy(self) -> "AvailabilityTimeline":
        t = AvailabilityTimeline.__new__(AvailabilityTimeline)
        t._lo = self._lo[:]
        t._hi = self._hi[:]
        t.initial_span = self.initial_span
        return t

    @property
    def intervals(self) -> list[tuple[int, int]]:
        return list(zip(self._lo, self._hi))

    @property
    def free_length(self) -> int:
        return sum(self._hi) - sum(self._lo)

    def find(self, start: int, finish: int) -> int:
        """Index of the free interval containing ``[start, finish)``, or -1."""
        i = bisect_right(self._lo, start) - 1
        if i >= 0 and finish <= self._hi[i]:
            return i
        return -1

    def take(self, i: int, start: int, finish: int) -> None:
        """Carve ``[start, finish)`` out of free interval ``i`` (as returned by :meth:`find`)."""
        lo, hi = self._lo[i], self._hi[i]
        if lo == start and hi == finish:
            del self._lo[i]
            del self._hi[i]
        elif lo == start:
            self._lo[i] = finish
        elif hi == finish:
            self._hi[i] = start
        else:
            self._hi[i] = start
            self._lo.insert(i + 1, finish)
            self._hi.insert(i + 1, hi)

    def remove(self, start: int, finish: int) -> bool:
        i = self.find(start, finish)
        if i < 0:
            return False
        self.take(i, start, finish)
        return True

    def release(self, start: int, finish: int) -> None:
        """Return ``[start, finish)`` to the free set, merging with touching neighbours."""
        i = bisect_right(self._lo, start)
        left = i > 0 and self._hi[i - 1] == start
        right = i < len(self._lo) and self._lo[i] == finish
        if (i > 0 and self._hi[i - 1] > start) or (i < len(self._lo) and self._lo[i] < finish):
            raise ContractViolation(f"[{start}, {finish}) overlaps free time")
        if left and right:
            self._hi[i - 1] = self._hi[i]
            del self._lo[i]
            del self._hi[i]
        elif left:
            self._hi[i - 1] = finish
        elif right:
            self._lo[i] = start
        else:
            self._lo.insert(i, start)
            self._hi.insert(i, finish)

    def is_consistent(self) -> bool:
        if len(self._lo) != len(self._hi):
            return False
        for k, (lo, hi) in enumerate(zip(self._lo, self._hi)):
            if lo >= hi:
                return False
            if k and self._hi[k - 1] >= lo:
                # touching intervals must have been coalesced
                return False
        return True


class DigitalObject:
    """One resource copy: identity, calendar, cost rate and its live bookings."""

    __slots__ = (
        "kind_id", "scenario", "copy_index", "up", "down", "timeline", "cost_rate", "booked", "_bookings",
    )

    def __init__(self, kind_id: int, scenario: Scenario, copy_index: int, up: int, down: int, cost_rate: float):
        self.kind_id = kind_id
        self.scenario = scenario
        self.copy_index = copy_index
        self.up = up
        self.down = down
        self.timeline = AvailabilityTimeline(up, down)
        self.cost_rate = cost_rate
        self.booked = 0
        self._bookings: list[tuple[int, int]] = []

    def copy(self) -> "DigitalObject":
        d = DigitalObject.__new__(DigitalObject)
        d.kind_id = self.kind_id
        d.scenario = self.scenario
        d.copy_index = self.copy_index
        d.up = self.up
        d.down = self.down
        d.timeline = self.timeline.copy()
        d.cost_rate = self.cost_rate
        d.booked = self.booked
        d._bookings = self._bookings[:]
        return d

    def __repr__(self):
        return (
            f"DigitalObject(kind={self.kind_id}, {self.scenario.value}, copy={self.copy_index}, "
            f"free={self.timeline.intervals})"
        )

    @property
    def bookings(self) -> list[tuple[int, int]]:
        return list(self._bookings)

    def show_availability(self) -> list[tuple[int, int]]:
        return self.timeline.intervals

    def show_utilisation_cost(self) -> float:
        return self.cost_rate

    def try_book(self, start: int, finish: int) -> bool:
        """Book ``[start, finish)`` if one free interval covers it. Returns False on refusal."""
        if start >= finish:
            raise ContractViolation(f"empty booking [{start}, {finish})")
        if self.timeline.remove(start, finish):
            self._bookings.append((start, finish))
            self.booked += finish - start
            return True
        return False

    def cancel_booking(self, start: int, finish: int) -> None:
        try:
            self._bookings.remove((start, finish))
        except ValueError:
            raise ContractViolation(
                f"[{start}, {finish}) was never booked on kind {self.kind_id} "
                f"{self.scenario.value} copy {self.copy_index}"
            ) from None
        self.timeline.release(start, finish)
        self.booked -= finish - start


class DoRegistry:
    """All digital objects, grouped by ``(scenario, kind_id)`` in copy order."""

    def __init__(self, groups: dict[tuple[Scenario, int], list[DigitalObject]]):
        self._groups = groups

    @classmethod
    def from_workload(cls, workload: Workload) -> "DoRegistry":
        groups = {}
        for kind in workload.kinds:
            for s in SCENARIOS:
                res = kind.per_scenario[s]
                groups[(s, kind.kind_id)] = [
                    DigitalObject(kind.kind_id, s, j, c.up, c.down, res.cost_rate)
                    for j, c in enumerate(res.copies)
                ]
        return cls(groups)

    def clone(self) -> "DoRegistry":
        return DoRegistry({key: [d.copy() for d in objs] for key, objs in self._groups.items()})

    def copies_of(self, scenario: Scenario, kind_id: int) -> list[DigitalObject]:
        try:
            return self._groups[(scenario, kind_id)]
        except KeyError:
            raise StructuralError(f"no kind {kind_id} in scenario {scenario.value}") from None

    def get(self, scenario: Scenario, kind_id: int, copy_index: int) -> DigitalObject:
        return self.copies_of(scenario, kind_id)[copy_index]

    def __iter__(self) -> Iterator[DigitalObject]:
        for objs in self._groups.values():
            yield from objs

    def __len__(self) -> int:
        return sum(len(objs) for objs in self._groups.values())

    def collaborate_book(self, scenario: Scenario, kind_id: int, start: int, finish: int) -> Optional[int]:
        """First-fit booking across copies of one kind; returns the copy index or None."""
        for d in self.copies_of(scenario, kind_id):
            # inlined AvailabilityTimeline.find; this loop is the decoder's hot path
            tl = d.timeline
            i = bisect_right(tl._lo, start) - 1
            if i >= 0 and finish <= tl._hi[i]:
                tl.take(i, start, finish)
                d._bookings.append((start, finish))
                d.booked += finish - start
                return d.copy_index
        return None

    def total_booked(self) -> int:
        return sum(d.booked for d in self)

    def total_span(self) -> int:
        return sum(d.timeline.initial_span for d in self)

    def utilisation(self) -> float:
        span = self.total_span()
        return self.total_booked() / span if span else 0.0
