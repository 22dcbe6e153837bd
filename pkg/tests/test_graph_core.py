from itertools import combinations
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from kneser_covers.graph import (
    Graph,
    GraphMap,
    NotAHomomorphism,
    categorical_product,
    colex_rank,
    colex_subsets,
    complete_graph,
    cycle_graph,
    degree_sequence,
    disjoint_union,
    empty_graph,
    induced_subgraph,
    is_bipartite_with_parts,
    is_connected,
    kneser_graph,
)
from kneser_covers.family import g_graph
from kneser_covers.symmetry import are_isomorphic


def brute_kneser_edges(n, k):
    subsets = list(combinations(range(1, n + 1), k))
    return sum(1 for a, b in combinations(subsets, 2) if not set(a) & set(b))


def test_complete_graph_examples():
    assert (complete_graph(1).n, complete_graph(1).num_edges) == (1, 0)
    assert (complete_graph(4).n, complete_graph(4).num_edges) == (4, 6)


@pytest.mark.parametrize("n,k", [(4, 2), (5, 2), (6, 2), (7, 3), (8, 3), (6, 3)])
def test_kneser_counts_match_brute_force(n, k):
    g = kneser_graph(n, k)
    assert g.n == comb(n, k)
    assert g.num_edges == brute_kneser_edges(n, k)


def test_kneser_small_cases():
    petersen = kneser_graph(5, 2)
    assert degree_sequence(petersen) == [3] * 10
    assert petersen.num_edges == 15
    matching = kneser_graph(4, 2)
    assert matching.num_edges == 3 and degree_sequence(matching) == [1] * 6
    assert are_isomorphic(kneser_graph(6, 1), complete_graph(6)) is not None


def test_colex_order_is_nested():
    for n in range(2, 8):
        for k in range(1, n):
            subs = colex_subsets(n, k)
            assert [colex_rank(s) for s in subs] == list(range(len(subs)))
            assert subs[: comb(n - 1, k)] == colex_subsets(n - 1, k)


def test_categorical_products():
    c6 = categorical_product(complete_graph(2), complete_graph(3))
    assert c6.n == 6 and degree_sequence(c6) == [2] * 6 and is_connected(c6)
    assert are_isomorphic(c6, cycle_graph(6)) is not None
    assert categorical_product(complete_graph(4), complete_graph(1)).num_edges == 0
    x = categorical_product(complete_graph(2), complete_graph(4))
    assert (x.n, x.num_edges) == (8, 12)
    assert is_bipartite_with_parts(x) is not None


def test_product_with_loop_factor():
    loop = Graph(1, [(0, 0)])
    g = categorical_product(complete_graph(3), loop)
    assert are_isomorphic(g, complete_graph(3)) is not None


def test_disjoint_union_and_induced():
    two = disjoint_union(complete_graph(1), complete_graph(1))
    assert (two.n, two.num_edges) == (2, 0)
    petersen = kneser_graph(5, 2)
    assert induced_subgraph(petersen, range(10)) == petersen
    assert induced_subgraph(petersen, []).n == 0
    sub = induced_subgraph(g_graph(5, 2, 1), range(comb(4, 2)))
    assert are_isomorphic(sub, g_graph(4, 2, 1)) is not None


def test_family_degree_sequences_agree():
    seqs = [sorted(degree_sequence(g_graph(7, 3, i))) for i in range(3)]
    assert seqs[0] == seqs[1] == seqs[2]


def test_bipartition():
    assert is_bipartite_with_parts(cycle_graph(6)) == [1 + v % 2 for v in range(6)]
    assert is_bipartite_with_parts(complete_graph(3)) is None
    h = categorical_product(complete_graph(2), kneser_graph(5, 2))
    assert is_bipartite_with_parts(h) == [1] * 10 + [2] * 10


def test_graph_map_validation():
    c6 = cycle_graph(6)
    GraphMap(c6, complete_graph(2), [v % 2 for v in range(6)])
    with pytest.raises(NotAHomomorphism):
        GraphMap(c6, complete_graph(2), [0] * 6)


@st.composite
def small_graphs(draw):
    n = draw(st.integers(1, 8))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    edges = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph(n, edges)


@given(small_graphs())
def test_serialization_round_trips(g):
    assert Graph.from_json(g.to_json()) == g
    assert Graph.from_dimacs(g.to_dimacs("test")) == g
    assert g.to_dimacs().splitlines()[0] == f"p edge {g.n} {g.num_edges}"
    assert g.to_dot().count("--") == g.num_edges


@given(small_graphs())
def test_product_edge_count_doubles(g):
    assert categorical_product(complete_graph(2), g).num_edges == 2 * g.num_edges


def test_empty_graph():
    assert empty_graph(3).num_edges == 0
