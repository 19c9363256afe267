"""Gap analysis between local 1-hop scheduling estimates and the optimum.

A node that only sees its 1-hop subgraph can compute the minimum schedule
duration for the demands it knows about. The largest such local value is a
lower bound on the true network-wide duration; the worst-case ratio between
the two over all demand vectors is what admission control must absorb.
This module certifies lower bounds on that ratio by replaying explicit
witness demands, and upper bounds via the imperfection ratio of the
conflict graph times the neighborhood cover number.
"""

from __future__ import annotations

import random
import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Mapping

from .errors import BoundUnavailableError, GraphError
from .graphs import (
    INFINITE,
    Link,
    NetworkGraph,
    conflict_graph,
    cycle_graph,
    make_link,
    one_hop_subgraph,
)
from .invariants import (
    imperfection_upper_bound,
    max_interfering_matching,
    neighborhood_cover_number,
)
from .qstab import DEFAULT_RAY_CAP
from .scheduling import fractional_chromatic, normalize_demands
from .search import DEFAULT_SET_CAP, iter_induced_cycles

_local_subgraph = lru_cache(maxsize=65536)(one_hop_subgraph)


def local_estimate(g: NetworkGraph, tau: Mapping, cap: int = DEFAULT_SET_CAP) -> Fraction:
    """Largest minimum schedule duration over all 1-hop views.

    Each vertex solves the exact scheduling LP on the subgraph induced by
    its closed neighborhood, seeing only demands of links inside it.
    """
    t = normalize_demands(conflict_graph(g, 2), tau)
    best = Fraction(0)
    for v in g.vertices:
        sub = _local_subgraph(g, v)
        local = {link: t[link] for link in sub.links if link in t}
        if not local:
            continue
        value = fractional_chromatic(conflict_graph(sub, 2), local, cap)
        if value > best:
            best = value
    return best


def duration_ratio(g: NetworkGraph, tau: Mapping, cap: int = DEFAULT_SET_CAP) -> Fraction:
    """Exact network-wide duration divided by the best local estimate."""
    t = normalize_demands(conflict_graph(g, 2), tau)
    if not t:
        raise GraphError("duration ratio needs a nonzero demand vector")
    return fractional_chromatic(conflict_graph(g, 2), t, cap) / local_estimate(
        g, t, cap
    )


def uncovered_cycle_order(
    g: NetworkGraph, cap: int = DEFAULT_SET_CAP
) -> tuple[int | float, tuple[str, ...] | None]:
    """Smallest k >= 2 such that some chordless (4k+2)-cycle fits in no
    1-hop view.

    Returns (k, cycle vertices) or (INFINITE, None). Covered cycles, those
    whose vertices all lie inside one closed neighborhood, do not count.
    """
    verts = g.vertices
    n = len(verts)
    index = {v: i for i, v in enumerate(verts)}
    adj = tuple(
        frozenset(index[w] for w in g.neighbors(v)) for v in verts
    )
    closed = [adj[i] | {i} for i in range(n)]
    for length in range(10, n + 1, 4):
        for cycle in iter_induced_cycles(n, adj, length, cap):
            members = set(cycle)
            if not any(members <= closed[i] for i in range(n)):
                return (length - 2) // 4, tuple(verts[i] for i in cycle)
    return INFINITE, None


@dataclass(frozen=True)
class RatioBounds:
    """Certified bounds on the worst local-to-global duration ratio."""

    lower: Fraction
    lower_witness: dict[Link, Fraction]
    lower_source: str
    upper: Fraction | None
    imp_upper: Fraction | None
    imp_certificate: str
    cover_number: int
    exact: Fraction | None


def _alternate_link_demand(
    g: NetworkGraph, cycle: tuple[str, ...]
) -> dict[Link, Fraction]:
    links = [
        make_link(cycle[i], cycle[(i + 1) % len(cycle)])
        for i in range(0, len(cycle), 2)
    ]
    for link in links:
        if not g.has_link(link):
            raise GraphError(f"cycle witness uses missing link {link!r}")
    return {link: Fraction(1) for link in links}


def _empirical_demands(
    g: NetworkGraph, count: int, seed: int, cap: int
) -> list[dict[Link, Fraction]]:
    rng = random.Random(seed)
    gc = conflict_graph(g, 2)
    n = len(gc.links)
    out = []
    for _ in range(count):
        if rng.random() < 0.5:
            tau = {
                link: Fraction(rng.randint(1, 4), rng.randint(1, 4))
                for link in g.links
                if rng.random() < 0.5
            }
            if tau:
                out.append(tau)
        else:
            start = rng.randrange(n)
            clique = [start]
            frontier = set(gc.adj[start])
            while frontier:
                pick = rng.choice(sorted(frontier))
                clique.append(pick)
                frontier &= gc.adj[pick]
            out.append({gc.links[i]: Fraction(1) for i in clique})
    return out


def ratio_lower_bound(
    g: NetworkGraph,
    empirical_samples: int = 0,
    seed: int = 0,
    cap: int = DEFAULT_SET_CAP,
) -> tuple[Fraction, dict[Link, Fraction], str]:
    """Best certified ratio over witness demands, each replayed exactly.

    Witness families: the indicator of a maximum interfering matching, the
    alternate links of an uncovered (4k+2)-cycle, and optional seeded
    empirical demand vectors. The reported bound is always the replayed
    exact ratio of its witness, never a formula.
    """
    if not g.links:
        raise GraphError("ratio bounds need at least one link")
    candidates: list[tuple[str, dict[Link, Fraction]]] = []
    size, matching = max_interfering_matching(g)
    if size >= 1:
        candidates.append(
            ("nu-ratio", {link: Fraction(1) for link in matching})
        )
    order, cycle = uncovered_cycle_order(g, cap)
    if cycle is not None:
        candidates.append(("odd-cycle", _alternate_link_demand(g, cycle)))
    for tau in _empirical_demands(g, empirical_samples, seed, cap):
        candidates.append(("empirical", tau))
    best = Fraction(0)
    witness: dict[Link, Fraction] = {}
    source = "nu-ratio"
    for src, tau in candidates:
        ratio = duration_ratio(g, tau, cap)
        if ratio > best:
            best = ratio
            witness = tau
            source = src
    return best, witness, source


def ratio_upper_bound(
    g: NetworkGraph,
    cap: int = DEFAULT_SET_CAP,
    ray_cap: int = DEFAULT_RAY_CAP,
) -> tuple[Fraction | None, Fraction | None, str, int]:
    """Imperfection bound times cover number; None when no route certifies.

    Returns (upper, imperfection upper, certificate tag, cover number).
    """
    if not g.links:
        raise GraphError("ratio bounds need at least one link")
    imp, tag = imperfection_upper_bound(conflict_graph(g, 2), ray_cap, cap)
    cover, _, _ = neighborhood_cover_number(g, cap)
    upper = None if imp is None else imp * cover
    return upper, imp, tag, cover


def ratio_bounds(
    g: NetworkGraph,
    empirical_samples: int = 0,
    seed: int = 0,
    cap: int = DEFAULT_SET_CAP,
    ray_cap: int = DEFAULT_RAY_CAP,
) -> RatioBounds:
    """Certified two-sided bounds; exact is set when the sides meet."""
    lower, witness, source = ratio_lower_bound(g, empirical_samples, seed, cap)
    upper, imp, tag, cover = ratio_upper_bound(g, cap, ray_cap)
    if upper is not None and lower > upper:
        raise RuntimeError(
            f"certified bounds crossed: lower {lower} > upper {upper}"
        )
    return RatioBounds(
        lower=lower,
        lower_witness=witness,
        lower_source=source,
        upper=upper,
        imp_upper=imp,
        imp_certificate=tag,
        cover_number=cover,
        exact=lower if upper == lower else None,
    )


def ring_ratio_exact(n: int) -> Fraction:
    """Exact worst-case ratio for the n-cycle, n = 4k+2 with k >= 2.

    Cross-validated: the replayed lower-bound witness and the certified
    upper bound must both equal (2k+1)/k before the value is returned.
    """
    if n < 10 or n % 4 != 2:
        raise GraphError(f"ring formula needs n = 4k+2 with k >= 2, got {n}")
    k = (n - 2) // 4
    expected = Fraction(2 * k + 1, k)
    bounds = ratio_bounds(cycle_graph(n))
    if bounds.exact != expected:
        raise RuntimeError(
            f"ring certificates disagree with {expected}: "
            f"lower {bounds.lower}, upper {bounds.upper}"
        )
    return expected


def admission_threshold(
    g: NetworkGraph,
    user_bound=None,
    cap: int = DEFAULT_SET_CAP,
    ray_cap: int = DEFAULT_RAY_CAP,
) -> tuple[Fraction, dict]:
    """Local-value threshold under which admission is always safe.

    With no user bound the threshold is 1 / (imperfection upper bound times
    cover number); any demand whose every local estimate stays at or below
    it is globally feasible. A user-supplied ratio bound is used as given,
    with a warning if it undercuts the certified lower bound.
    """
    if not g.links:
        raise GraphError("admission threshold needs at least one link")
    if user_bound is not None:
        bound = Fraction(user_bound)
        if bound <= 0:
            raise GraphError("user ratio bound must be positive")
        lower, _, _ = ratio_lower_bound(g, cap=cap)
        if bound < lower:
            warnings.warn(
                f"user ratio bound {bound} is below the certified lower "
                f"bound {lower}; admissions may be unsound",
                RuntimeWarning,
                stacklevel=2,
            )
        return Fraction(1) / bound, {"source": "user", "ratio_bound": bound}
    upper, imp, tag, cover = ratio_upper_bound(g, cap, ray_cap)
    if upper is None:
        raise BoundUnavailableError(
            "no imperfection certificate applies to this conflict graph"
        )
    return Fraction(1) / upper, {
        "source": "auto",
        "ratio_upper": upper,
        "imp_upper": imp,
        "certificate": tag,
        "cover_number": cover,
    }
