"""Graph invariants: interfering matchings, covers, chordality, imperfection."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from corpus import family_graphs, random_connected_graph
from oracles import (
    brute_cover_number,
    brute_interfering_matching,
    brute_is_chordal,
    brute_link_distance,
    verify_hole,
    verify_peo,
)
from hopadmit import (
    ResourceLimitError,
    build_graph,
    clique_pendant_graph,
    complete_graph,
    conflict_graph,
    cycle_graph,
    fractional_chromatic,
    imperfection_lower_bound,
    imperfection_upper_bound,
    invariant_report,
    is_chordal,
    make_link,
    max_interfering_matching,
    max_local_interfering_matching,
    neighborhood_cover_number,
    one_hop_subgraph,
    star_graph,
    weighted_clique_number,
)
from hopadmit.qstab import qstab_vertices


def _index_adj(gc):
    return len(gc.links), gc.adj


def test_matching_on_complete_graphs():
    for n in range(3, 9):
        size, witness = max_interfering_matching(complete_graph(n))
        assert size == n // 2
        assert len(witness) == size


def test_matching_on_cycles():
    size, _ = max_interfering_matching(cycle_graph(6))
    assert size == 3
    for n in range(7, 13):
        size, _ = max_interfering_matching(cycle_graph(n))
        assert size == 2


def test_matching_witness_is_pairwise_distance_one(seed=67, trials=15):
    rng = random.Random(seed)
    graphs = [g for _, g in family_graphs()]
    graphs += [random_connected_graph(rng, 7, 10) for _ in range(trials)]
    for g in graphs:
        size, witness = max_interfering_matching(g)
        assert len(witness) == size
        for i, e in enumerate(witness):
            for f in witness[i + 1 :]:
                assert brute_link_distance(g, e, f) == 1


def test_matching_matches_brute(seed=71, trials=15):
    rng = random.Random(seed)
    for _ in range(trials):
        g = random_connected_graph(rng, 7, 10)
        size, _ = max_interfering_matching(g)
        assert size == brute_interfering_matching(g)


def test_matching_guard():
    with pytest.raises(ResourceLimitError):
        max_interfering_matching(cycle_graph(5), max_links=4)


def test_local_matching_examples():
    for n in (4, 6, 9):
        best, _ = max_local_interfering_matching(cycle_graph(n))
        assert best == 1
    for n in (4, 6):
        best, _ = max_local_interfering_matching(complete_graph(n))
        assert best == n // 2
    best, _ = max_local_interfering_matching(clique_pendant_graph(2))
    assert best == 1
    for r in (3, 4, 5):
        best, _ = max_local_interfering_matching(clique_pendant_graph(r))
        assert best == 1 + (r - 1) // 2


def test_local_matching_below_global(seed=73, trials=12):
    rng = random.Random(seed)
    for _ in range(trials):
        g = random_connected_graph(rng, 7, 10)
        local, _ = max_local_interfering_matching(g)
        whole, _ = max_interfering_matching(g)
        assert local <= whole
        for v in g.vertices:
            size, _ = max_interfering_matching(one_hop_subgraph(g, v))
            assert size <= whole


def test_cover_number_examples():
    count, _, _ = neighborhood_cover_number(cycle_graph(10))
    assert count == 2
    count, _, _ = neighborhood_cover_number(star_graph(5))
    assert count == 1
    count, _, _ = neighborhood_cover_number(complete_graph(5))
    assert count == 1
    for r in (2, 3, 4):
        count, _, _ = neighborhood_cover_number(clique_pendant_graph(r))
        assert count == r


def test_cover_witness_is_consistent(seed=79, trials=10):
    rng = random.Random(seed)
    graphs = [g for _, g in family_graphs()]
    graphs += [random_connected_graph(rng, 7, 10) for _ in range(trials)]
    for g in graphs:
        count, links, vertices = neighborhood_cover_number(g)
        if count == 0:
            continue
        assert len(vertices) == count
        gc = conflict_graph(g, 2)
        idx = [gc.index(l) for l in links]
        assert all(b in gc.adj[a] for a in idx for b in idx if a != b)
        covered = set()
        for v in vertices:
            sub = one_hop_subgraph(g, v)
            covered.update(l for l in links if sub.has_link(l))
        assert set(links) == covered


def test_cover_number_matches_brute(seed=83, trials=10):
    rng = random.Random(seed)
    for _ in range(trials):
        g = random_connected_graph(rng, 6, 8)
        count, _, _ = neighborhood_cover_number(g)
        assert count == brute_cover_number(g)


def test_chordal_tree_and_square():
    tree = build_graph("abcd", [("a", "b"), ("b", "c"), ("b", "d")])
    ok, order = is_chordal(tree)
    assert ok and len(order) == 4
    square = cycle_graph(4)
    ok, hole = is_chordal(square)
    assert not ok
    assert len(hole) == 4


def test_chordality_of_ring_conflict_graph():
    gc = conflict_graph(cycle_graph(10), 2)
    ok, hole = is_chordal(gc)
    assert not ok
    assert len(hole) >= 4
    trimmed = gc.without_links(
        [make_link("v9", "v10"), make_link("v1", "v10")]
    )
    ok, order = is_chordal(trimmed)
    assert ok
    n, adj = _index_adj(trimmed)
    pos = {link: i for i, link in enumerate(trimmed.links)}
    assert verify_peo(n, adj, [pos[l] for l in order])


def test_chordality_certificates_verify(seed=89, trials=25):
    rng = random.Random(seed)
    for _ in range(trials):
        g = random_connected_graph(rng, 7, 10)
        for obj in (g, conflict_graph(g, 2)):
            ok, cert = is_chordal(obj)
            if isinstance(obj, type(g)):
                labels = list(obj.vertices)
                adj = tuple(
                    frozenset(labels.index(w) for w in obj.neighbors(v))
                    for v in labels
                )
            else:
                labels = list(obj.links)
                adj = obj.adj
            n = len(labels)
            assert ok == brute_is_chordal(n, adj)
            indices = [labels.index(c) for c in cert]
            if ok:
                assert verify_peo(n, adj, indices)
            else:
                assert verify_hole(n, adj, indices)


def test_imp_lower_line_c5():
    gc = conflict_graph(cycle_graph(5), 1)
    value, witness = imperfection_lower_bound(gc)
    assert value == Fraction(5, 4)
    replay = fractional_chromatic(gc, witness) / weighted_clique_number(gc, witness)
    assert replay == value


def test_imp_lower_perfect_graphs():
    for g in (complete_graph(4), star_graph(4), clique_pendant_graph(3)):
        gc = conflict_graph(g, 2)
        value, _ = imperfection_lower_bound(gc)
        assert value == 1


def test_imp_lower_accepts_user_candidates():
    gc = conflict_graph(cycle_graph(10), 2)
    even = {gc.links[i]: 1 for i in range(0, 10, 2)}
    value, _ = imperfection_lower_bound(gc, candidates=[even])
    assert value >= Fraction(5, 4)


def test_imp_upper_certificates():
    chordal_gc = conflict_graph(star_graph(4), 2)
    assert imperfection_upper_bound(chordal_gc) == (1, "perfect")
    ring = conflict_graph(cycle_graph(10), 2)
    assert imperfection_upper_bound(ring) == (Fraction(5, 4), "ring-formula")
    line5 = conflict_graph(cycle_graph(5), 1)
    value, tag = imperfection_upper_bound(line5)
    assert value == Fraction(5, 4)
    assert tag == "polytope-enumeration"
    kc = conflict_graph(complete_graph(5), 2)
    assert imperfection_upper_bound(kc) == (1, "perfect")


def test_imp_upper_unavailable_on_large_odd_ring():
    gc = conflict_graph(cycle_graph(13), 2)
    value, tag = imperfection_upper_bound(gc)
    assert tag == "odd-cycle-family" or value is None or value >= 1


def test_imp_bounds_sandwich(seed=97, trials=15):
    rng = random.Random(seed)
    graphs = [g for _, g in family_graphs()]
    graphs.append(clique_pendant_graph(5))
    graphs.append(cycle_graph(14))
    graphs += [random_connected_graph(rng, 7, 10) for _ in range(trials)]
    for g in graphs:
        gc = conflict_graph(g, 2)
        if not gc.links:
            continue
        lower, _ = imperfection_lower_bound(gc)
        upper, tag = imperfection_upper_bound(gc)
        assert lower >= 1
        if upper is not None:
            assert lower <= upper
        if tag == "perfect":
            assert lower == 1


def test_qstab_c5_vertices():
    gc = conflict_graph(cycle_graph(5), 1)
    n = len(gc.links)
    cliques = [
        sorted((i, j)) for i in range(n) for j in gc.adj[i] if j > i
    ]
    vertices = qstab_vertices(n, [tuple(q) for q in cliques])
    assert len(vertices) == 12
    for vertex in vertices:
        assert all(v >= 0 for v in vertex)
        for q in cliques:
            assert sum(vertex[i] for i in q) <= 1
    halves = [v for v in vertices if any(x == Fraction(1, 2) for x in v)]
    assert len(halves) == 1


def test_imp_grid_stays_below_polytope_value(seed=101, trials=6):
    rng = random.Random(seed)
    for _ in range(trials):
        g = random_connected_graph(rng, 6, 7)
        gc = conflict_graph(g, 2)
        if not gc.links:
            continue
        upper, tag = imperfection_upper_bound(gc)
        if upper is None:
            continue
        for _ in range(30):
            tau = {
                link: Fraction(rng.randint(0, 3), 3) for link in gc.links
            }
            tau = {l: v for l, v in tau.items() if v}
            if not tau:
                continue
            ratio = fractional_chromatic(gc, tau) / weighted_clique_number(gc, tau)
            assert ratio <= upper


def test_invariant_report_ring():
    report = invariant_report(cycle_graph(10))
    assert report.nu == 2
    assert report.lam == 2
    assert report.imp_lower == Fraction(5, 4)
    assert report.imp_upper == Fraction(5, 4)
    assert report.imp_upper_certificate == "ring-formula"
    assert len(report.lam_witness_vertices) == 2


def test_invariant_report_dense_graph_terminates():
    report = invariant_report(complete_graph(6))
    assert report.nu == 3
    assert report.lam == 1
    assert report.imp_lower == 1
    assert report.imp_upper == 1
    assert report.imp_upper_certificate == "perfect"
