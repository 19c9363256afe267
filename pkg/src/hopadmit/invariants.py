"""Structural invariants used to bound scheduling performance.

Three quantities drive the admission analysis:

* the largest matching whose links pairwise sit at distance exactly one
  (disjoint but still conflicting), globally and within 1-hop views;
* the worst-case number of 1-hop neighborhoods needed to cover a maximal
  set of pairwise conflicting links;
* lower and upper bounds on the imperfection ratio of the conflict graph,
  the largest possible gap between the scheduling LP and its clique bound.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Sequence

from .chordal import chordality_certificate
from .errors import GraphError, ResourceLimitError
from .graphs import (
    ConflictGraph,
    Link,
    NetworkGraph,
    _all_pairs_distances,
    conflict_components,
    conflict_graph,
    induced_conflict,
    one_hop_subgraph,
)
from .qstab import DEFAULT_RAY_CAP, qstab_vertices
from .scheduling import _cliques_of, fractional_chromatic, weighted_clique_number
from .search import (
    DEFAULT_SET_CAP,
    exact_set_cover,
    is_bipartite,
    iter_induced_cycles,
    max_clique,
)

DEFAULT_MATCHING_LIMIT = 64
POLYTOPE_VERTEX_LIMIT = 12


# ---------------------------------------------------------------------------
# Spaced matchings.


@lru_cache(maxsize=4096)
def _unit_distance_adjacency(g: NetworkGraph) -> tuple[frozenset[int], ...]:
    """Adjacency between links at distance exactly one."""
    links = g.links
    dist = _all_pairs_distances(g)
    n = len(links)
    adj: list[set[int]] = [set() for _ in range(n)]
    for i in range(n):
        a, b = links[i]
        for j in range(i + 1, n):
            x, y = links[j]
            if x in (a, b) or y in (a, b):
                continue
            ds = [
                dist[a].get(x),
                dist[a].get(y),
                dist[b].get(x),
                dist[b].get(y),
            ]
            if min((d for d in ds if d is not None), default=0) == 1:
                adj[i].add(j)
                adj[j].add(i)
    return tuple(frozenset(s) for s in adj)


def max_interfering_matching(
    g: NetworkGraph, max_links: int = DEFAULT_MATCHING_LIMIT
) -> tuple[int, tuple[Link, ...]]:
    """Largest set of links pairwise at distance exactly one, with witness.

    Such links are disjoint yet mutually conflicting under radius 2, so any
    schedule must serialize them all.
    """
    if len(g.links) > max_links:
        raise ResourceLimitError(
            f"matching search limited to {max_links} links, graph has {len(g.links)}"
        )
    if not g.links:
        return 0, ()
    adj = _unit_distance_adjacency(g)
    clique = max_clique(len(g.links), adj)
    return len(clique), tuple(g.links[i] for i in clique)


def max_local_interfering_matching(
    g: NetworkGraph, max_links: int = DEFAULT_MATCHING_LIMIT
) -> tuple[int, str | None]:
    """Largest interfering matching inside any single 1-hop view."""
    if len(g.links) > max_links:
        raise ResourceLimitError(
            f"matching search limited to {max_links} links, graph has {len(g.links)}"
        )
    best = 0
    where: str | None = None
    for v in g.vertices:
        size, _ = max_interfering_matching(one_hop_subgraph(g, v), max_links)
        if size > best:
            best = size
            where = v
    return best, where


# ---------------------------------------------------------------------------
# Neighborhood covers of conflict cliques.


def neighborhood_cover_number(
    g: NetworkGraph, cap: int = DEFAULT_SET_CAP
) -> tuple[int, tuple[Link, ...], tuple[str, ...]]:
    """Worst maximal conflict clique, measured in 1-hop views needed to see it.

    Returns (count, clique links, covering vertices) for a clique attaining
    the maximum. Graphs without links return (0, (), ()).
    """
    gc = conflict_graph(g, 2)
    if not gc.links:
        return 0, (), ()
    neighborhood_links: dict[str, frozenset[int]] = {}
    for v in g.vertices:
        keep = {v, *g.neighbors(v)}
        neighborhood_links[v] = frozenset(
            i for i, (a, b) in enumerate(gc.links) if a in keep and b in keep
        )
    best = 0
    best_links: tuple[Link, ...] = ()
    best_vertices: tuple[str, ...] = ()
    for clique in _cliques_of(gc, cap):
        members = {link_idx: pos for pos, link_idx in enumerate(clique)}
        owners: list[str] = []
        seen: dict[frozenset[int], str] = {}
        sets: list[frozenset[int]] = []
        for v in g.vertices:
            part = frozenset(
                members[i] for i in neighborhood_links[v] if i in members
            )
            if part and part not in seen:
                seen[part] = v
                sets.append(part)
                owners.append(v)
        chosen = exact_set_cover(len(clique), sets)
        if len(chosen) > best:
            best = len(chosen)
            best_links = tuple(gc.links[i] for i in clique)
            best_vertices = tuple(sorted(owners[i] for i in chosen))
    return best, best_links, best_vertices


# ---------------------------------------------------------------------------
# Chordality.


def is_chordal(
    obj: NetworkGraph | ConflictGraph,
) -> tuple[bool, tuple]:
    """Chordality with a checkable certificate.

    Returns (True, perfect elimination ordering) or (False, induced hole),
    labeled by vertices for a network graph and by links for a conflict
    graph.
    """
    if isinstance(obj, NetworkGraph):
        labels: Sequence = obj.vertices
        index = {v: i for i, v in enumerate(labels)}
        adj = tuple(
            frozenset(index[w] for w in obj.neighbors(v)) for v in labels
        )
    else:
        labels = obj.links
        adj = obj.adj
    ok, cert = chordality_certificate(len(labels), adj)
    return ok, tuple(labels[i] for i in cert)


# ---------------------------------------------------------------------------
# Imperfection ratio bounds.


def _odd_hole_candidates(
    gc: ConflictGraph, cap: int, most: int = 128
) -> list[dict[Link, Fraction]]:
    n = len(gc.links)
    for length in range(5, min(n, 13) + 1, 2):
        found = []
        for cycle in iter_induced_cycles(n, gc.adj, length, cap):
            found.append({gc.links[i]: Fraction(1) for i in cycle})
            if len(found) >= most:
                break
        if found:
            return found
    return []


def imperfection_lower_bound(
    gc: ConflictGraph,
    candidates: Sequence[Mapping] | None = None,
    cap: int = DEFAULT_SET_CAP,
    enumerate_limit: int = POLYTOPE_VERTEX_LIMIT,
) -> tuple[Fraction, dict[Link, Fraction]]:
    """Best LP-to-clique-bound gap over a candidate demand family.

    Candidates tried: one indicator per link, indicators of chordless odd
    cycles, every 0/1 vector when the graph is small, plus any supplied
    vectors. Always sound as a lower bound; equals the true ratio whenever
    some candidate attains it.
    """
    n = len(gc.links)
    if n == 0:
        raise GraphError("imperfection ratio needs at least one link")
    trial: list[dict[Link, Fraction]] = [
        {link: Fraction(1)} for link in gc.links
    ]
    trial.extend(_odd_hole_candidates(gc, cap))
    if n <= enumerate_limit:
        for mask in range(1, 1 << n):
            trial.append(
                {
                    gc.links[i]: Fraction(1)
                    for i in range(n)
                    if mask >> i & 1
                }
            )
    for extra in candidates or ():
        trial.append({link: Fraction(v) for link, v in extra.items()})
    best = Fraction(0)
    witness: dict[Link, Fraction] = {}
    for tau in trial:
        clique = weighted_clique_number(gc, tau, cap)
        if clique == 0:
            continue
        ratio = fractional_chromatic(gc, tau, cap) / clique
        if ratio > best:
            best = ratio
            witness = tau
    return best, witness


def _ring_scheme_bound(gc: ConflictGraph) -> Fraction | None:
    """Certified ratio bound from deleting spaced vertex pairs.

    Looks for a cyclic layout where consecutive pairs partition the
    vertices and every pair deletion leaves a chordal graph. Each vertex
    then appears in all but one of the p chordal subgraphs, so stacking
    their clique-tight schedules proves chi_f/omega <= p/(p-1). The bound
    is only returned once every deletion's chordality has been verified.
    """
    m = len(gc.links)
    if m < 10 or m % 4 != 2:
        return None
    if any(len(a) != 4 for a in gc.adj):
        return None
    ring_adj: list[list[int]] = [[] for _ in range(m)]
    for i in range(m):
        for j in gc.adj[i]:
            if j > i and len(gc.adj[i] & gc.adj[j]) == 2:
                ring_adj[i].append(j)
                ring_adj[j].append(i)
    if any(len(nb) != 2 for nb in ring_adj):
        return None
    order = [0, min(ring_adj[0])]
    while len(order) < m:
        prev, cur = order[-2], order[-1]
        nxt = next((w for w in ring_adj[cur] if w != prev), None)
        if nxt is None or nxt in order:
            return None
        order.append(nxt)
    if order[-1] not in ring_adj[0]:
        return None
    pos = {v: i for i, v in enumerate(order)}
    for v in range(m):
        p = pos[v]
        expected = {
            order[(p - 2) % m],
            order[(p - 1) % m],
            order[(p + 1) % m],
            order[(p + 2) % m],
        }
        if gc.adj[v] != frozenset(expected):
            return None
    pairs = [
        (order[2 * t], order[2 * t + 1]) for t in range(m // 2)
    ]
    for a, b in pairs:
        keep = [i for i in range(m) if i not in (a, b)]
        sub = induced_conflict(gc, keep)
        ok, _ = chordality_certificate(len(sub.links), sub.adj)
        if not ok:
            return None
    p = m // 2
    return Fraction(p, p - 1)


def _component_imp_upper(comp: ConflictGraph, ray_cap: int, cap: int) -> tuple[Fraction | None, str]:
    m = len(comp.links)
    ok, _ = chordality_certificate(m, comp.adj)
    if ok or is_bipartite(m, comp.adj):
        return Fraction(1), "perfect"
    ring = _ring_scheme_bound(comp)
    if ring is not None:
        return ring, "ring-formula"
    if m <= POLYTOPE_VERTEX_LIMIT:
        cliques = _cliques_of(comp, cap)
        best = Fraction(1)
        for vertex in qstab_vertices(m, cliques, ray_cap):
            tau = {comp.links[i]: x for i, x in enumerate(vertex) if x > 0}
            if not tau:
                continue
            value = fractional_chromatic(comp, tau, cap)
            if value > best:
                best = value
        return best, "polytope-enumeration"
    if m % 2 == 1 and all(len(a) == 2 for a in comp.adj):
        return Fraction(m, m - 1), "odd-cycle-family"
    return None, "unavailable"


def imperfection_upper_bound(
    gc: ConflictGraph,
    ray_cap: int = DEFAULT_RAY_CAP,
    cap: int = DEFAULT_SET_CAP,
) -> tuple[Fraction | None, str]:
    """Certified upper bound on the imperfection ratio, with its route.

    Routes per connected component: perfection by chordality or
    bipartiteness, the verified pair-deletion scheme, exact polytope
    vertex enumeration on small components, and the plain odd-cycle
    formula. Components combine by maximum. Returns (None, "unavailable")
    when any component has no route.
    """
    if not gc.links:
        return Fraction(1), "perfect"
    best = Fraction(0)
    tag = "perfect"
    for comp in conflict_components(gc):
        value, route = _component_imp_upper(
            induced_conflict(gc, comp), ray_cap, cap
        )
        if value is None:
            return None, "unavailable"
        if value > best:
            best = value
            tag = route
    return best, tag


# ---------------------------------------------------------------------------
# Combined report.


@dataclass(frozen=True)
class InvariantReport:
    nu: int
    nu_witness: tuple[Link, ...]
    lam: int
    lam_witness_links: tuple[Link, ...]
    lam_witness_vertices: tuple[str, ...]
    imp_lower: Fraction
    imp_lower_witness: dict[Link, Fraction]
    imp_upper: Fraction | None
    imp_upper_certificate: str


def invariant_report(
    g: NetworkGraph,
    cap: int = DEFAULT_SET_CAP,
    ray_cap: int = DEFAULT_RAY_CAP,
) -> InvariantReport:
    """Compute every invariant of the conflict graph of g at radius 2."""
    gc = conflict_graph(g, 2)
    nu, nu_wit = max_interfering_matching(g)
    lam, lam_links, lam_verts = neighborhood_cover_number(g, cap)
    if gc.links:
        imp_lo, imp_wit = imperfection_lower_bound(gc, cap=cap)
    else:
        imp_lo, imp_wit = Fraction(1), {}
    imp_hi, cert = imperfection_upper_bound(gc, ray_cap, cap)
    return InvariantReport(
        nu=nu,
        nu_witness=nu_wit,
        lam=lam,
        lam_witness_links=lam_links,
        lam_witness_vertices=lam_verts,
        imp_lower=imp_lo,
        imp_lower_witness=imp_wit,
        imp_upper=imp_hi,
        imp_upper_certificate=cert,
    )
