from itertools import permutations, product

import pytest

from kneser_covers.cover import (
    EVEN,
    NEITHER,
    ODD,
    Bigraph,
    Involution,
    are_conjugate,
    are_evenly_conjugate,
    brute_force_homomorphisms,
    canonical_cover_iso,
    decompose_odd_involution,
    descend_map,
    enumerate_odd_involutions,
    even_centralizer,
    kronecker_cover,
    lift_map,
    parity_of_map,
    quotient,
    quotient_is_simple,
)
from kneser_covers.family import bipartite_kneser, g_graph, sigma, subset_permutation, tau_times
from kneser_covers.graph import Graph, GraphMap, complete_graph, cycle_graph, empty_graph, kneser_graph
from kneser_covers.perm import Perm
from kneser_covers.symmetry import are_isomorphic, automorphism_group


def c6():
    return Bigraph(cycle_graph(6), [1 + v % 2 for v in range(6)])


def brute_odd_involutions(x):
    edges = set(x.graph.edges)
    out = []
    for p in permutations(range(x.n)):
        if any(x.parity[p[v]] == x.parity[v] for v in range(x.n)):
            continue
        if any(p[p[v]] != v for v in range(x.n)):
            continue
        if all(tuple(sorted((p[u], p[v]))) in edges for u, v in x.graph.edges):
            out.append(p)
    return sorted(out)


def test_parity_classification():
    x, swap = bipartite_kneser(5, 2)
    assert parity_of_map(GraphMap.identity(x.graph), x, x) == EVEN
    assert parity_of_map(swap, x, x) == ODD
    two = Bigraph(empty_graph(2), [1, 2])
    assert parity_of_map(GraphMap(two.graph, two.graph, [1, 1]), two, two) == NEITHER


def test_kronecker_cover_examples():
    x, swap = kronecker_cover(kneser_graph(5, 2))
    assert (x.n, x.graph.num_edges) == (20, 30)
    tri, swap3 = kronecker_cover(complete_graph(3))
    assert are_isomorphic(tri.graph, cycle_graph(6)) is not None
    assert all(swap3(v) != v for v in range(6))
    with pytest.raises(ValueError):
        kronecker_cover(Graph(1, [(0, 0)]))


def test_c6_odd_involutions_match_brute_force():
    # antipodal map plus the reflections v -> c - v for odd c
    x = c6()
    found = [a.assignment for a in enumerate_odd_involutions(x)]
    assert found == brute_odd_involutions(x)
    assert len(found) == 4


def test_small_quotients():
    x = c6()
    antipodal = Involution(x.graph, [(v + 3) % 6 for v in range(6)])
    q = quotient(x, antipodal)
    assert quotient_is_simple(x, antipodal)
    assert are_isomorphic(q.graph, complete_graph(3)) is not None
    reflection = Involution(x.graph, [(5 - v) % 6 for v in range(6)])
    q = quotient(x, reflection)
    assert q.graph.n == 3 and not q.graph.is_simple()
    assert not quotient_is_simple(x, reflection)


def test_family_quotients():
    x, swap = bipartite_kneser(5, 2)
    assert are_isomorphic(quotient(x, swap).graph, kneser_graph(5, 2)) is not None
    assert quotient_is_simple(x, tau_times(5, 2, sigma(1, 5)))
    assert not quotient_is_simple(x, tau_times(5, 2, sigma(2, 5)))


def test_quotient_rejects_even_maps():
    x, _ = bipartite_kneser(5, 2)
    with pytest.raises(ValueError):
        quotient(x, tau_times(5, 2, sigma(1, 5), flip=False))


@pytest.mark.parametrize("g", [complete_graph(3), cycle_graph(5), kneser_graph(5, 2), cycle_graph(8)])
def test_round_trip_through_cover(g):
    x, swap = kronecker_cover(g)
    q = quotient(x, swap)
    assert q.graph.edges == g.edges
    f, cover = canonical_cover_iso(x, swap)
    assert f.is_isomorphism()


def test_canonical_cover_iso_handles_loops():
    x, _ = bipartite_kneser(5, 2)
    f, cover = canonical_cover_iso(x, tau_times(5, 2, sigma(2, 5)))
    assert f.is_isomorphism() and parity_of_map(f, x, cover) == EVEN
    f, _ = canonical_cover_iso(c6(), Involution(cycle_graph(6), [(v + 3) % 6 for v in range(6)]))
    assert f.is_isomorphism()


def test_descend_examples():
    n, k = 5, 2
    x, _ = bipartite_kneser(n, k)
    a = tau_times(n, k, sigma(1, n))
    q = quotient(x, a)
    ident = descend_map(GraphMap.identity(x.graph), q, q)
    assert ident.assignment == tuple(range(q.graph.n))
    # any even automorphism id x p with p commuting with sigma_1 descends to an automorphism
    p = Perm.parse(5, "(3,4,5)")
    f = tau_times(n, k, p, flip=False)
    assert descend_map(f, q, q).is_isomorphism()


def test_lift_of_kneser_automorphism():
    n, k = 5, 2
    x, swap = bipartite_kneser(n, k)
    q = quotient(x, swap)
    p = Perm.parse(5, "(1,2,3)")
    f = tau_times(n, k, p, flip=False)
    fbar = descend_map(f, q, q)
    assert lift_map(fbar, q, q).assignment == f.assignment
    assert lift_map(GraphMap.identity(q.graph), q, q).assignment == tuple(range(x.n))


def test_lift_descend_inverse_on_all_automorphisms():
    x, _ = bipartite_kneser(5, 2)
    a = tau_times(5, 2, sigma(1, 5))
    q = quotient(x, a)
    group = automorphism_group(x.graph)
    checked = 0
    for g in group.elements():
        f = GraphMap(x.graph, x.graph, g.images)
        if parity_of_map(f, x, x) != EVEN or any(f(a(v)) != a(f(v)) for v in range(x.n)):
            continue
        assert lift_map(descend_map(f, q, q), q, q) == f
        checked += 1
    assert checked == 12


def test_uniqueness_of_descent_on_c6():
    x = c6()
    a = Involution(x.graph, [(v + 3) % 6 for v in range(6)])
    q = quotient(x, a)
    for f in brute_force_homomorphisms(x.graph, x.graph):
        if any(f(a(v)) != a(f(v)) for v in range(6)):
            continue
        hits = [
            g
            for g in product(range(3), repeat=3)
            if all(q.projection[f(v)] == g[q.projection[v]] for v in range(6))
        ]
        assert hits == [descend_map(f, q, q).assignment]


def test_even_conjugacy_examples():
    n, k = 5, 2
    x, swap = bipartite_kneser(n, k)
    a = tau_times(n, k, Perm.parse(5, "(1,2)"))
    b = tau_times(n, k, Perm.parse(5, "(1,3)"))
    w = are_evenly_conjugate(x, a, b)
    assert w is not None
    assert are_evenly_conjugate(x, swap, a) is None
    w = are_evenly_conjugate(x, a, a)
    assert w is not None and all(w(a(v)) == a(w(v)) for v in range(x.n))
    assert are_conjugate(x, a, b) is not None


def test_enumeration_on_h52():
    x, _ = bipartite_kneser(5, 2)
    invs = enumerate_odd_involutions(x)
    assert len(invs) == 26
    kn = kneser_graph(5, 2)
    assert all(decompose_odd_involution(kn, a, check_star=False)[0] for a in invs)
    ok, p = decompose_odd_involution(kn, tau_times(5, 2, sigma(1, 5)))
    assert ok and list(p.images) == subset_permutation(5, 2, sigma(1, 5))
    ok, p = decompose_odd_involution(kn, bipartite_kneser(5, 2)[1])
    assert ok and p.is_identity()


def test_single_simple_quotient_k4():
    x, _ = kronecker_cover(complete_graph(4))
    simple = [a for a in enumerate_odd_involutions(x) if quotient_is_simple(x, a)]
    assert len(simple) == 1


@pytest.mark.parametrize("i,order", [(0, 120), (1, 12)])
def test_even_centralizer_by_filtering(i, order):
    x, _ = bipartite_kneser(5, 2)
    a = tau_times(5, 2, sigma(i, 5))
    cen = even_centralizer(x, a)
    filtered = {
        g.images
        for g in automorphism_group(x.graph).elements()
        if all(x.parity[g(v)] == x.parity[v] for v in range(x.n)) and all(g(a(v)) == a(g(v)) for v in range(x.n))
    }
    assert cen.order == len(filtered) == order
    assert {g.images for g in cen.elements()} == filtered
    assert cen.order == automorphism_group(g_graph(5, 2, i)).order


def test_brute_force_homomorphisms_counts():
    # homomorphisms K_2 -> K_3 are the 6 ordered pairs of distinct vertices
    assert len(list(brute_force_homomorphisms(complete_graph(2), complete_graph(3)))) == 6
    assert list(brute_force_homomorphisms(complete_graph(3), complete_graph(2))) == []
