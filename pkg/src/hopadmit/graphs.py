"""Network graphs, link distances, and interference conflict graphs.

Vertices are strings. A link is a canonically sorted pair of distinct
vertices. The conflict graph for interference radius k puts two links in
conflict when their link distance (shortest vertex distance between their
endpoint sets) is strictly below k; links able to share a time slot are
exactly the independent sets of that graph.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import GraphError

Link = tuple[str, str]

INFINITE = math.inf


def make_link(u: str, v: str) -> Link:
    if u == v:
        raise GraphError(f"self-loop at {u!r} is not a link")
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class NetworkGraph:
    """Immutable undirected graph with sorted vertex and link tuples."""

    vertices: tuple[str, ...]
    links: tuple[Link, ...]

    def neighbors(self, v: str) -> tuple[str, ...]:
        return _adjacency(self)[v]

    def has_vertex(self, v: str) -> bool:
        return v in _adjacency(self)

    def has_link(self, e: Link) -> bool:
        return e in _link_set(self)

    def degree(self, v: str) -> int:
        return len(self.neighbors(v))


@lru_cache(maxsize=None)
def _adjacency(g: NetworkGraph) -> dict[str, tuple[str, ...]]:
    adj: dict[str, set[str]] = {v: set() for v in g.vertices}
    for u, v in g.links:
        adj[u].add(v)
        adj[v].add(u)
    return {v: tuple(sorted(nb)) for v, nb in adj.items()}


@lru_cache(maxsize=None)
def _link_set(g: NetworkGraph) -> frozenset[Link]:
    return frozenset(g.links)


def build_graph(vertices: Iterable[str], edges: Iterable[Sequence[str]]) -> NetworkGraph:
    """Validate and canonicalize a vertex/edge description.

    Duplicate edges collapse; self-loops and edges touching unknown
    vertices are rejected.
    """
    vset = set()
    for v in vertices:
        if not isinstance(v, str) or not v:
            raise GraphError(f"vertex ids must be nonempty strings, got {v!r}")
        vset.add(v)
    links = set()
    for edge in edges:
        if len(edge) != 2:
            raise GraphError(f"edge {edge!r} must have exactly two endpoints")
        u, v = edge
        if u not in vset or v not in vset:
            raise GraphError(f"edge {edge!r} touches an unknown vertex")
        links.add(make_link(u, v))
    return NetworkGraph(tuple(sorted(vset)), tuple(sorted(links)))


def _bfs_distances(g: NetworkGraph, sources: Iterable[str]) -> dict[str, int]:
    dist = {s: 0 for s in sources}
    queue = deque(dist)
    adj = _adjacency(g)
    while queue:
        u = queue.popleft()
        for w in adj[u]:
            if w not in dist:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


@lru_cache(maxsize=None)
def _all_pairs_distances(g: NetworkGraph) -> dict[str, dict[str, int]]:
    return {v: _bfs_distances(g, (v,)) for v in g.vertices}


def link_distance(g: NetworkGraph, e: Link, f: Link) -> int | float:
    """Shortest vertex distance between the endpoint sets of two links.

    Equal links and links sharing an endpoint are at distance 0.
    Returns INFINITE when the links lie in different components.
    """
    for link in (e, f):
        if not g.has_link(link):
            raise GraphError(f"{link!r} is not a link of the graph")
    if e == f or set(e) & set(f):
        return 0
    dist = _bfs_distances(g, e)
    best = min((dist[x] for x in f if x in dist), default=None)
    return INFINITE if best is None else best


def one_hop_subgraph(g: NetworkGraph, v: str) -> NetworkGraph:
    """Subgraph induced by v and its neighbors."""
    if not g.has_vertex(v):
        raise GraphError(f"unknown vertex {v!r}")
    keep = {v, *g.neighbors(v)}
    links = [e for e in g.links if e[0] in keep and e[1] in keep]
    return NetworkGraph(tuple(sorted(keep)), tuple(links))


@dataclass(frozen=True)
class ConflictGraph:
    """Graph on links; adjacency means the links may not share a slot."""

    links: tuple[Link, ...]
    adj: tuple[frozenset[int], ...]
    k: int

    def index(self, link: Link) -> int:
        return _link_index(self)[link]

    def has_link(self, link: Link) -> bool:
        return link in _link_index(self)

    def edge_count(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    def degree_sequence(self) -> tuple[int, ...]:
        return tuple(len(a) for a in self.adj)

    def without_links(self, drop: Iterable[Link]) -> ConflictGraph:
        """Induced conflict graph with the given links removed."""
        gone = set(drop)
        for link in gone:
            if not self.has_link(link):
                raise GraphError(f"{link!r} is not a conflict-graph vertex")
        keep = [i for i, l in enumerate(self.links) if l not in gone]
        return induced_conflict(self, keep)


@lru_cache(maxsize=None)
def _link_index(gc: ConflictGraph) -> dict[Link, int]:
    return {link: i for i, link in enumerate(gc.links)}


def induced_conflict(gc: ConflictGraph, keep: Sequence[int]) -> ConflictGraph:
    """Conflict subgraph induced by a list of vertex indices."""
    order = sorted(set(keep))
    pos = {old: new for new, old in enumerate(order)}
    adj = tuple(
        frozenset(pos[j] for j in gc.adj[old] if j in pos) for old in order
    )
    return ConflictGraph(tuple(gc.links[old] for old in order), adj, gc.k)


@lru_cache(maxsize=4096)
def conflict_graph(g: NetworkGraph, k: int = 2) -> ConflictGraph:
    """Conflict graph of g: links conflict iff link distance < k."""
    if k < 1:
        raise GraphError(f"interference radius must be >= 1, got {k}")
    links = g.links
    n = len(links)
    dist = _all_pairs_distances(g)
    adj: list[set[int]] = [set() for _ in range(n)]
    for i in range(n):
        a, b = links[i]
        da, db = dist[a], dist[b]
        for j in range(i + 1, n):
            x, y = links[j]
            d = min(
                da.get(x, INFINITE),
                da.get(y, INFINITE),
                db.get(x, INFINITE),
                db.get(y, INFINITE),
            )
            if d < k:
                adj[i].add(j)
                adj[j].add(i)
    return ConflictGraph(links, tuple(frozenset(s) for s in adj), k)


def conflict_components(gc: ConflictGraph) -> list[list[int]]:
    """Connected components of the conflict graph, as sorted index lists."""
    seen: set[int] = set()
    comps = []
    for s in range(len(gc.links)):
        if s in seen:
            continue
        comp = [s]
        seen.add(s)
        queue = deque(comp)
        while queue:
            u = queue.popleft()
            for w in gc.adj[u]:
                if w not in seen:
                    seen.add(w)
                    comp.append(w)
                    queue.append(w)
        comps.append(sorted(comp))
    return comps


# ---------------------------------------------------------------------------
# Generators. Vertices are named v1..vn (x1..xr / y1..yr for the clique with
# pendants) so CLI link ids like "v1-v2" stay unambiguous.


def cycle_graph(n: int) -> NetworkGraph:
    if n < 3:
        raise GraphError(f"cycle needs n >= 3, got {n}")
    verts = [f"v{i}" for i in range(1, n + 1)]
    edges = [(verts[i], verts[(i + 1) % n]) for i in range(n)]
    return build_graph(verts, edges)


def complete_graph(n: int) -> NetworkGraph:
    if n < 1:
        raise GraphError(f"complete graph needs n >= 1, got {n}")
    verts = [f"v{i}" for i in range(1, n + 1)]
    edges = [(verts[i], verts[j]) for i in range(n) for j in range(i + 1, n)]
    return build_graph(verts, edges)


def clique_pendant_graph(r: int) -> NetworkGraph:
    """Clique x1..xr with one pendant leaf yi hanging off each xi."""
    if r < 2:
        raise GraphError(f"clique with pendants needs r >= 2, got {r}")
    xs = [f"x{i}" for i in range(1, r + 1)]
    ys = [f"y{i}" for i in range(1, r + 1)]
    edges = [(xs[i], xs[j]) for i in range(r) for j in range(i + 1, r)]
    edges += [(xs[i], ys[i]) for i in range(r)]
    return build_graph(xs + ys, edges)


def star_graph(m: int) -> NetworkGraph:
    """Star with center v0 and leaves v1..vm."""
    if m < 1:
        raise GraphError(f"star needs m >= 1 leaves, got {m}")
    verts = ["v0"] + [f"v{i}" for i in range(1, m + 1)]
    edges = [("v0", f"v{i}") for i in range(1, m + 1)]
    return build_graph(verts, edges)


def circulant_graph(n: int, offsets: Iterable[int]) -> NetworkGraph:
    if n < 3:
        raise GraphError(f"circulant needs n >= 3, got {n}")
    offs = set()
    for s in offsets:
        s = s % n
        if s == 0:
            raise GraphError("circulant offset 0 would be a self-loop")
        offs.add(min(s, n - s))
    if not offs:
        raise GraphError("circulant needs at least one offset")
    verts = [f"v{i}" for i in range(1, n + 1)]
    edges = [(verts[i], verts[(i + s) % n]) for i in range(n) for s in offs]
    return build_graph(verts, edges)


def generate(spec: str) -> NetworkGraph:
    """Build a named family instance from shorthand like "cycle:10".

    Families: cycle:n, complete:n, clique_pendant:r, star:m,
    circulant:n:s1,s2,...
    """
    parts = spec.split(":")
    family = parts[0]
    try:
        if family == "cycle" and len(parts) == 2:
            return cycle_graph(int(parts[1]))
        if family == "complete" and len(parts) == 2:
            return complete_graph(int(parts[1]))
        if family == "clique_pendant" and len(parts) == 2:
            return clique_pendant_graph(int(parts[1]))
        if family == "star" and len(parts) == 2:
            return star_graph(int(parts[1]))
        if family == "circulant" and len(parts) == 3:
            offsets = [int(s) for s in parts[2].split(",") if s]
            return circulant_graph(int(parts[1]), offsets)
    except ValueError as exc:
        raise GraphError(f"bad generator shorthand {spec!r}: {exc}") from exc
    raise GraphError(f"unknown generator shorthand {spec!r}")


GENERATOR_FAMILIES = ("cycle", "complete", "clique_pendant", "star", "circulant")
