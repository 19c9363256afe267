"""Exact link scheduling against a conflict graph.

A demand vector assigns each link a nonnegative rational airtime per unit
time. A schedule is a list of (independent link set, duration) entries; the
shortest schedule meeting a demand vector has total duration equal to the
weighted fractional chromatic number of the conflict graph, computed here
as an exact covering LP over maximal independent sets.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Sequence

from .errors import GraphError
from .graphs import ConflictGraph, Link, conflict_components, induced_conflict
from .search import DEFAULT_SET_CAP
from .search import maximal_cliques as _maximal_cliques_idx
from .search import maximal_independent_sets as _mis_idx
from .simplex import solve_min_ge

DemandVector = Mapping[Link, Fraction]


def normalize_demands(gc: ConflictGraph, tau: Mapping) -> dict[Link, Fraction]:
    """Coerce values to Fraction and reject unknown links or negative demand."""
    out: dict[Link, Fraction] = {}
    for link, raw in tau.items():
        if not gc.has_link(link):
            raise GraphError(f"demand names {link!r}, which is not a link")
        try:
            value = Fraction(raw)
        except (ValueError, TypeError, ZeroDivisionError) as exc:
            raise GraphError(f"demand for {link!r} is not a rational: {raw!r}") from exc
        if value < 0:
            raise GraphError(f"demand for {link!r} is negative")
        if value:
            out[link] = value
    return out


@lru_cache(maxsize=4096)
def _mis_of(gc: ConflictGraph, cap: int) -> tuple[tuple[int, ...], ...]:
    return tuple(_mis_idx(len(gc.links), gc.adj, cap))


@lru_cache(maxsize=4096)
def _cliques_of(gc: ConflictGraph, cap: int) -> tuple[tuple[int, ...], ...]:
    return tuple(_maximal_cliques_idx(len(gc.links), gc.adj, cap))


def maximal_independent_sets(
    gc: ConflictGraph, cap: int = DEFAULT_SET_CAP
) -> list[tuple[Link, ...]]:
    """All maximal sets of pairwise non-conflicting links, sorted."""
    return [tuple(gc.links[i] for i in s) for s in _mis_of(gc, cap)]


def _component_lp(
    comp: ConflictGraph, weights: Sequence[Fraction], cap: int
) -> tuple[Fraction, list[tuple[tuple[int, ...], Fraction]]]:
    """Solve the covering LP on one connected support component.

    Returns the optimal duration and the positive-duration entries as
    (independent index set, duration) pairs.
    """
    sets = _mis_of(comp, cap)
    n = len(comp.links)
    a_matrix = [[1 if i in s else 0 for s in sets] for i in range(n)]
    sol = solve_min_ge([1] * len(sets), a_matrix, weights)
    entries = [
        (sets[j], dur) for j, dur in enumerate(sol.x) if dur > 0
    ]
    return sol.value, entries


def _support_components(
    gc: ConflictGraph, tau: dict[Link, Fraction], cap: int
) -> list[tuple[ConflictGraph, list[Fraction]]]:
    support = [i for i, link in enumerate(gc.links) if tau.get(link, 0) > 0]
    if not support:
        return []
    sub = induced_conflict(gc, support)
    out = []
    for comp in conflict_components(sub):
        comp_gc = induced_conflict(sub, comp)
        out.append((comp_gc, [tau[link] for link in comp_gc.links]))
    return out


def fractional_chromatic(
    gc: ConflictGraph, tau: Mapping, cap: int = DEFAULT_SET_CAP
) -> Fraction:
    """Minimum total schedule duration meeting the demand vector, exactly.

    Demands restricted to zero give duration 0. The value decomposes as the
    max over connected components of the demand's support.
    """
    t = normalize_demands(gc, tau)
    best = Fraction(0)
    for comp, weights in _support_components(gc, t, cap):
        value, _ = _component_lp(comp, weights, cap)
        if value > best:
            best = value
    return best


@dataclass(frozen=True)
class Schedule:
    """Timetable entries of (independent link set, duration)."""

    entries: tuple[tuple[frozenset[Link], Fraction], ...]

    def total(self) -> Fraction:
        return sum((dur for _, dur in self.entries), Fraction(0))

    def coverage(self, link: Link) -> Fraction:
        return sum(
            (dur for links, dur in self.entries if link in links), Fraction(0)
        )

    def satisfies(self, gc: ConflictGraph, tau: Mapping) -> bool:
        """Every entry independent in gc and every demand fully covered."""
        t = normalize_demands(gc, tau)
        for links, dur in self.entries:
            if dur < 0:
                return False
            idx = [gc.index(l) for l in links]
            if any(b in gc.adj[a] for a in idx for b in idx):
                return False
        return all(self.coverage(link) >= need for link, need in t.items())


def min_schedule(
    gc: ConflictGraph, tau: Mapping, cap: int = DEFAULT_SET_CAP
) -> Schedule:
    """A shortest schedule meeting the demands.

    Per-component optimal schedules run in parallel: the timeline is cut at
    every component's entry boundary and concurrent entries are unioned,
    which is sound because links in different support components never
    conflict.
    """
    t = normalize_demands(gc, tau)
    parts = []
    for comp, weights in _support_components(gc, t, cap):
        _, entries = _component_lp(comp, weights, cap)
        timeline = []
        clock = Fraction(0)
        for idx_set, dur in entries:
            links = frozenset(comp.links[i] for i in idx_set)
            timeline.append((clock, clock + dur, links))
            clock += dur
        parts.append(timeline)
    if not parts:
        return Schedule(())

    cuts = sorted({Fraction(0)} | {seg[1] for timeline in parts for seg in timeline})
    merged = []
    for lo, hi in zip(cuts, cuts[1:]):
        active: frozenset[Link] = frozenset()
        for timeline in parts:
            for start, end, links in timeline:
                if start <= lo and hi <= end:
                    active = active | links
                    break
        if active:
            merged.append((active, hi - lo))
    schedule = Schedule(tuple(merged))
    if not schedule.satisfies(gc, tau):
        raise AssertionError("optimal schedule failed its own feasibility check")
    return schedule


def weighted_clique_number(
    gc: ConflictGraph, tau: Mapping, cap: int = DEFAULT_SET_CAP
) -> Fraction:
    """Largest total demand on a set of pairwise conflicting links."""
    t = normalize_demands(gc, tau)
    support = [i for i, link in enumerate(gc.links) if t.get(link, 0) > 0]
    if not support:
        return Fraction(0)
    sub = induced_conflict(gc, support)
    best = Fraction(0)
    for clique in _cliques_of(sub, cap):
        weight = sum((t[sub.links[i]] for i in clique), Fraction(0))
        if weight > best:
            best = weight
    return best


def is_feasible(gc: ConflictGraph, tau: Mapping, cap: int = DEFAULT_SET_CAP) -> bool:
    """Whether the demands fit in one unit of time."""
    return fractional_chromatic(gc, tau, cap) <= 1
