"""Small exact combinatorial searches on index-based adjacency.

All functions take a vertex count and a sequence of neighbor sets
(vertex i's neighbors as a set of indices) and run deterministically:
candidates are always visited in ascending index order.
"""

from __future__ import annotations

from typing import Iterator, Sequence

from .errors import ResourceLimitError

DEFAULT_SET_CAP = 10**6


def maximal_cliques(
    n: int, adj: Sequence[frozenset[int]], cap: int = DEFAULT_SET_CAP
) -> list[tuple[int, ...]]:
    """All maximal cliques via Bron-Kerbosch with pivoting.

    Raises ResourceLimitError once more than cap cliques have been found.
    """
    out: list[tuple[int, ...]] = []

    def expand(r: list[int], p: set[int], x: set[int]) -> None:
        if not p and not x:
            if len(out) >= cap:
                raise ResourceLimitError(
                    f"maximal set enumeration exceeded cap of {cap}"
                )
            out.append(tuple(sorted(r)))
            return
        pivot = -1
        best = -1
        for u in sorted(p | x):
            score = len(p & adj[u])
            if score > best:
                best = score
                pivot = u
        for v in sorted(p - adj[pivot]):
            expand(r + [v], p & adj[v], x & adj[v])
            p.remove(v)
            x.add(v)

    expand([], set(range(n)), set())
    return sorted(out)


def maximal_independent_sets(
    n: int, adj: Sequence[frozenset[int]], cap: int = DEFAULT_SET_CAP
) -> list[tuple[int, ...]]:
    """All maximal independent sets: maximal cliques of the complement."""
    everything = frozenset(range(n))
    co_adj = [everything - adj[i] - {i} for i in range(n)]
    return maximal_cliques(n, co_adj, cap)


def max_clique(n: int, adj: Sequence[frozenset[int]]) -> tuple[int, ...]:
    """One maximum clique, by branch and bound with a greedy coloring bound."""
    if n == 0:
        return ()
    best: list[int] = []

    def coloring_order(p: list[int]) -> list[tuple[int, int]]:
        # Greedy color classes; a vertex's color number bounds the largest
        # clique through it inside p.
        classes: list[list[int]] = []
        for v in p:
            for idx, cls in enumerate(classes):
                if not any(u in adj[v] for u in cls):
                    cls.append(v)
                    break
            else:
                classes.append([v])
        ordered = []
        for idx, cls in enumerate(classes):
            for v in cls:
                ordered.append((v, idx + 1))
        return ordered

    def expand(r: list[int], p: list[int]) -> None:
        nonlocal best
        ordered = coloring_order(p)
        for v, bound in reversed(ordered):
            if len(r) + bound <= len(best):
                return
            r.append(v)
            nxt = [u for u in p if u in adj[v] and u != v]
            if not nxt:
                if len(r) > len(best):
                    best = list(r)
            else:
                expand(r, nxt)
            r.pop()
            p.remove(v)

    expand([], list(range(n)))
    return tuple(sorted(best))


def exact_set_cover(universe: int, sets: Sequence[frozenset[int]]) -> tuple[int, ...]:
    """Indices of a minimum subfamily covering range(universe).

    Requires the union of the sets to cover the universe. Branches on the
    element with the fewest remaining candidate sets.
    """
    if universe == 0:
        return ()
    full = frozenset(range(universe))
    if frozenset().union(*sets) != full:
        raise ValueError("sets do not cover the universe")

    # Dominated sets can never be needed.
    live = [
        i
        for i, s in enumerate(sets)
        if not any(
            (s < sets[j]) or (s == sets[j] and j < i) for j in range(len(sets))
        )
    ]

    covers: dict[int, list[int]] = {
        e: [i for i in live if e in sets[i]] for e in range(universe)
    }
    best: list[int] | None = None

    def greedy_bound(uncovered: frozenset[int]) -> list[int]:
        chosen = []
        left = set(uncovered)
        while left:
            pick = max(live, key=lambda i: (len(sets[i] & left), -i))
            chosen.append(pick)
            left -= sets[pick]
        return chosen

    best = greedy_bound(full)

    def expand(chosen: list[int], uncovered: frozenset[int]) -> None:
        nonlocal best
        if not uncovered:
            if best is None or len(chosen) < len(best):
                best = list(chosen)
            return
        if best is not None:
            biggest = max(len(sets[i] & uncovered) for i in live)
            lower = -(-len(uncovered) // biggest)
            if len(chosen) + lower >= len(best):
                return
        target = min(uncovered, key=lambda e: (len(covers[e]), e))
        for i in covers[target]:
            expand(chosen + [i], uncovered - sets[i])

    expand([], full)
    assert best is not None
    return tuple(sorted(best))


def iter_induced_cycles(
    n: int,
    adj: Sequence[frozenset[int]],
    length: int,
    cap: int = DEFAULT_SET_CAP,
) -> Iterator[tuple[int, ...]]:
    """Yield each chordless cycle of exactly the given length once.

    Cycles are vertex tuples starting at their smallest vertex, oriented so
    the second entry is smaller than the last. Only induced paths are ever
    extended, so dense regions prune immediately. The cap bounds the number
    of path extensions.
    """
    if length < 3 or n < length:
        return
    budget = [cap]

    def extend(path: list[int], used: set[int]) -> Iterator[tuple[int, ...]]:
        last = path[-1]
        if len(path) == length:
            if path[0] in adj[last] and path[1] < path[-1]:
                yield tuple(path)
            return
        closing_next = len(path) + 1 == length
        for w in sorted(adj[last]):
            if w <= path[0] or w in used:
                continue
            if any(w in adj[p] for p in path[1:-1]):
                continue
            if len(path) >= 2 and not closing_next and path[0] in adj[w]:
                continue
            budget[0] -= 1
            if budget[0] < 0:
                raise ResourceLimitError(
                    f"cycle search exceeded cap of {cap} extensions"
                )
            path.append(w)
            used.add(w)
            yield from extend(path, used)
            path.pop()
            used.remove(w)

    for start in range(n):
        yield from extend([start], {start})


def is_bipartite(n: int, adj: Sequence[frozenset[int]]) -> bool:
    color: dict[int, int] = {}
    for s in range(n):
        if s in color:
            continue
        color[s] = 0
        queue = [s]
        while queue:
            u = queue.pop()
            for w in adj[u]:
                if w not in color:
                    color[w] = 1 - color[u]
                    queue.append(w)
                elif color[w] == color[u]:
                    return False
    return True
