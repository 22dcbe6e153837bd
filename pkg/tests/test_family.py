from math import comb

import pytest

from kneser_covers.family import (
    aut_structure_map,
    bipartite_kneser,
    bipartite_kneser_subset_form,
    check_index,
    g_graph,
    loop_witness,
    new_layer_vertices,
    orbit_label,
    sigma,
    simplicity_threshold,
    subset_form_iso,
)
from kneser_covers.graph import colex_subsets, degree_sequence, induced_subgraph, kneser_graph
from kneser_covers.perm import Perm
from kneser_covers.symmetry import are_isomorphic, automorphism_group, centralizer_order_formula


def test_sigma():
    assert sigma(0, 5).is_identity()
    assert sigma(2, 5) == Perm.parse(5, "(1,2)(3,4)")
    assert sigma(2, 5)(4) == 4
    assert (sigma(1, 4) * sigma(1, 4)).is_identity()
    with pytest.raises(ValueError):
        sigma(3, 5)


def test_index_checks():
    with pytest.raises(ValueError):
        check_index(3, 2)
    with pytest.raises(ValueError):
        check_index(5, 2, 3)


def test_bipartite_kneser_counts():
    x, _ = bipartite_kneser(5, 2)
    assert (x.n, x.graph.num_edges) == (20, 30)
    x, _ = bipartite_kneser(6, 2)
    assert (x.n, x.graph.num_edges) == (30, 90)
    for k in (1, 2, 3):
        x, _ = bipartite_kneser(2 * k + 1, k)
        assert set(degree_sequence(x.graph)) == {k + 1}


def test_subset_form():
    h = bipartite_kneser_subset_form(5, 2)
    v12 = h.labels.index(frozenset({1, 2}))
    assert sorted(h.labels[w] for w in h.neighbors(v12)) == sorted(
        frozenset({1, 2, c}) for c in (3, 4, 5)
    )
    h51 = bipartite_kneser_subset_form(5, 1)
    assert h51.n == 10 and set(degree_sequence(h51)) == {4}
    for n, k in [(5, 2), (6, 2), (7, 3), (5, 1)]:
        f = subset_form_iso(n, k)
        x, _ = bipartite_kneser(n, k)
        labels = x.graph.labels
        target = f.target.labels
        for v in range(x.n):
            layer, s = labels[v]
            expect = s if layer == 1 else frozenset(range(1, n + 1)) - s
            assert target[f(v)] == expect


def test_g_graph_examples():
    assert g_graph(5, 2, 0).edges == kneser_graph(5, 2).edges
    g1 = g_graph(5, 2, 1)
    assert g1.n == 10 and g1.is_simple()
    assert are_isomorphic(g1, kneser_graph(5, 2)) is None
    assert not g_graph(5, 2, 2).is_simple()


def test_simplicity_tables():
    assert simplicity_threshold(5, 2) == [True, True, False]
    assert simplicity_threshold(7, 3) == [True, True, True, False]
    assert simplicity_threshold(6, 2) == [True, True, False, False]
    assert loop_witness(5, 2, 2) == frozenset({1, 3})
    assert loop_witness(5, 2, 1) is None


def test_orbit_labels():
    assert orbit_label(5, 2, 1, 0) == "{1,2} | {1,2}"
    assert orbit_label(5, 2, 1, 1) == "{1,3} | {2,3}"


@pytest.mark.parametrize("n,k,i", [(5, 2, 1), (6, 2, 1), (7, 3, 2), (8, 3, 1)])
def test_new_layer(n, k, i):
    fresh = new_layer_vertices(n, k, i)
    assert len(fresh) == comb(n - 1, k - 1)
    subsets = colex_subsets(n, k)
    s_i = sigma(i, n)
    g = g_graph(n, k, i)
    for v in fresh:
        s = subsets[v]
        assert n in s and s_i(n - 1) == n - 1
    for a in fresh:
        for b in fresh:
            assert not g.adjacent(a, b)


def test_colex_nesting_of_family():
    for n, k, i in [(6, 2, 1), (7, 3, 2), (8, 3, 2)]:
        assert induced_subgraph(g_graph(n, k, i), range(comb(n - 1, k))).edges == g_graph(n - 1, k, i).edges


@pytest.mark.parametrize("n,k,i", [(5, 2, 0), (5, 2, 1), (6, 2, 1), (7, 3, 1), (7, 3, 2), (8, 3, 2)])
def test_aut_structure_map(n, k, i):
    s = aut_structure_map(n, k, i)
    aut = automorphism_group(g_graph(n, k, i))
    assert all(g in aut for g in s.graph_images)
    assert s.image_group().order == s.abstract_order == centralizer_order_formula(n, i) == aut.order
    assert all(p.commutes_with(sigma(i, n)) for p in s.sn_images)
