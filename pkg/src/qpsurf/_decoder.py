"""Minimum-weight perfect-matching decoder for the Z-check syndrome.

The decoder works in three stages:

1. :func:`detection_events` turns the per-round syndrome history into
   space-time events (a check whose outcome changed since the previous
   round; the reference before round 1 is the trivial syndrome).
2. :func:`mwpm` pairs events with each other or with the boundary so that
   the total Manhattan weight is minimal.
3. :func:`recovery_from_matching` projects every pair onto the data
   lattice and collects the X flips that clear the final syndrome.
"""

from __future__ import annotations

__author__ = "Artur Barseghyan <artur.barseghyan@gmail.com>"
__copyright__ = "2026 Artur Barseghyan"
__license__ = "MIT"
__all__ = (
    "BOUNDARY",
    "DetectionEvent",
    "MatchingInstance",
    "MatchingResult",
    "Recovery",
    "SyndromeHistory",
    "decode",
    "detection_events",
    "edge_weight",
    "events_from_checks",
    "mwpm",
    "recovery_from_matching",
)

import enum
import itertools
import logging
from collections.abc import Sequence
from dataclasses import dataclass

import networkx as nx
import numpy as np

from qpsurf._code import CodeLayout, boundary_distance, build_layout

log = logging.getLogger("qpsurf.decoder")


class _Boundary(enum.Enum):
    BOUNDARY = "boundary"

    def __repr__(self) -> str:
        return "BOUNDARY"


BOUNDARY = _Boundary.BOUNDARY
"""Partner used for an event matched to the top or bottom boundary."""


@dataclass(frozen=True)
class SyndromeHistory:
    """Z-check outcomes, one row per round (``1`` means outcome ``-1``)."""

    d: int
    rounds: int
    bits: np.ndarray

    def __post_init__(self) -> None:
        bits = np.asarray(self.bits, dtype=np.uint8)
        n_checks = self.d * (self.d - 1)
        if bits.shape != (self.rounds, n_checks):
            raise ValueError(
                f"Syndrome history must have shape ({self.rounds}, {n_checks}), "
                f"got {bits.shape}"
            )
        object.__setattr__(self, "bits", bits)

    @classmethod
    def empty(cls, d: int, rounds: int) -> SyndromeHistory:
        return cls(d, rounds, np.zeros((rounds, d * (d - 1)), dtype=np.uint8))

    @property
    def final(self) -> np.ndarray:
        """Syndrome of the last round."""
        return self.bits[-1]


@dataclass(frozen=True, slots=True, order=True)
class DetectionEvent:
    check_row_idx: int
    check_col_idx: int
    round: int


Partner = DetectionEvent | _Boundary


@dataclass(frozen=True)
class MatchingInstance:
    """Events to be paired; every event also owns a virtual boundary partner."""

    d: int
    events: tuple[DetectionEvent, ...]


@dataclass(frozen=True)
class MatchingResult:
    """Pairs covering every event; boundary partners appear as :data:`BOUNDARY`."""

    pairs: tuple[tuple[DetectionEvent, Partner], ...]
    weight: int


@dataclass(frozen=True)
class Recovery:
    """Data qubits that receive an ``X`` correction."""

    flips: frozenset[int]


def detection_events(history: SyndromeHistory) -> list[DetectionEvent]:
    """Checks whose outcome differs from the previous round.

    Rounds are numbered from 1.  Round 0 is the trivial syndrome of the
    initial logical state.
    """
    padded = np.vstack(
        [np.zeros((1, history.bits.shape[1]), dtype=np.uint8), history.bits]
    )
    changed = np.argwhere(padded[1:] != padded[:-1])
    d = history.d
    return [
        DetectionEvent(int(check) // d, int(check) % d, int(t) + 1)
        for t, check in changed
    ]


def edge_weight(e1: DetectionEvent, e2: Partner, d: int) -> int:
    """Unit-cost distance between an event and another event or the boundary."""
    if e2 is BOUNDARY:
        layout = build_layout(d)
        return boundary_distance(
            layout, layout.check_at(e1.check_row_idx, e1.check_col_idx)
        )
    return (
        abs(e1.check_row_idx - e2.check_row_idx)
        + abs(e1.check_col_idx - e2.check_col_idx)
        + abs(e1.round - e2.round)
    )


def mwpm(instance: MatchingInstance) -> MatchingResult:
    """Exact minimum-weight perfect matching of *instance*.

    Node ``("e", i)`` is event ``i``; node ``("b", i)`` is its boundary
    partner.  Boundary partners are joined to each other at zero cost.
    """
    events = instance.events
    if not events:
        return MatchingResult(pairs=(), weight=0)

    graph = nx.Graph()
    for i, event in enumerate(events):
        graph.add_edge(
            ("e", i), ("b", i), weight=edge_weight(event, BOUNDARY, instance.d)
        )
    for i, j in itertools.combinations(range(len(events)), 2):
        graph.add_edge(
            ("e", i), ("e", j), weight=edge_weight(events[i], events[j], instance.d)
        )
        graph.add_edge(("b", i), ("b", j), weight=0)

    matching = nx.min_weight_matching(graph, weight="weight")

    pairs: list[tuple[DetectionEvent, Partner]] = []
    weight = 0
    for a, b in matching:
        if a[0] == "b" and b[0] == "b":
            continue
        if a[0] == "b":
            a, b = b, a
        weight += graph[a][b]["weight"]
        if b[0] == "b":
            pairs.append((events[a[1]], BOUNDARY))
        else:
            first, second = sorted((events[a[1]], events[b[1]]))
            pairs.append((first, second))

    log.debug(
        "Matched %d events into %d pairs (weight %d)",
        len(events),
        len(pairs),
        weight,
    )
    return MatchingResult(pairs=tuple(sorted(pairs, key=_pair_key)), weight=weight)


def _pair_key(pair: tuple[DetectionEvent, Partner]) -> tuple:
    first, second = pair
    if second is BOUNDARY:
        return (first, 1, first)
    return (first, 0, second)


def _vertical_path(
    layout: CodeLayout, col_idx: int, row_from: int, row_to: int
) -> list[int]:
    lo, hi = sorted((row_from, row_to))
    return [layout.data_at(2 * a + 2, 2 * col_idx) for a in range(lo, hi)]


def _horizontal_path(
    layout: CodeLayout, row_idx: int, col_from: int, col_to: int
) -> list[int]:
    lo, hi = sorted((col_from, col_to))
    return [layout.data_at(2 * row_idx + 1, 2 * b + 1) for b in range(lo, hi)]


def _boundary_path(layout: CodeLayout, event: DetectionEvent) -> list[int]:
    a, b = event.check_row_idx, event.check_col_idx
    if a + 1 <= layout.d - 1 - a:
        return [layout.data_at(row, 2 * b) for row in range(2 * a, -1, -2)]
    return [
        layout.data_at(row, 2 * b) for row in range(2 * a + 2, 2 * layout.d - 1, 2)
    ]


def recovery_from_matching(
    matching: MatchingResult, layout: CodeLayout
) -> Recovery:
    """X flips along a canonical path for every matched pair.

    Event pairs move vertically along the first event's column, then
    horizontally along the second event's row.  Boundary pairs take the
    vertical path to the nearer of the top and bottom boundaries.  Flips
    shared by several paths cancel modulo 2.
    """
    parity = np.zeros(layout.n_data, dtype=np.uint8)
    for first, second in matching.pairs:
        if second is BOUNDARY:
            path = _boundary_path(layout, first)
        else:
            path = _vertical_path(
                layout,
                first.check_col_idx,
                first.check_row_idx,
                second.check_row_idx,
            ) + _horizontal_path(
                layout,
                second.check_row_idx,
                first.check_col_idx,
                second.check_col_idx,
            )
        for q in path:
            parity[q] ^= 1
    return Recovery(flips=frozenset(int(q) for q in np.flatnonzero(parity)))


def decode(history: SyndromeHistory, layout: CodeLayout) -> Recovery:
    """Recovery whose syndrome equals the final-round syndrome of *history*."""
    events = detection_events(history)
    if not events:
        return Recovery(flips=frozenset())
    matching = mwpm(MatchingInstance(d=layout.d, events=tuple(events)))
    return recovery_from_matching(matching, layout)


def events_from_checks(
    layout: CodeLayout, checks: Sequence[int], round_: int = 1
) -> list[DetectionEvent]:
    """Detection events for *checks* in a single round."""
    return [
        DetectionEvent(*layout.check_grid_coords[c], round_) for c in checks
    ]
