from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kneser_covers.canon import BudgetExceeded
from kneser_covers.coloring import (
    Coloring,
    chromatic_number,
    chromatic_number_exact,
    dsatur_greedy,
    inductive_coloring,
    is_proper,
    k_coloring,
    lovasz_bound,
    max_clique_size,
)
from kneser_covers.family import g_graph
from kneser_covers.graph import Graph, categorical_product, complete_graph, cycle_graph, disjoint_union, kneser_graph


def brute_chromatic(g):
    if g.n == 0:
        return 0
    for t in range(1, g.n + 1):
        for colors in product(range(t), repeat=g.n):
            if all(colors[u] != colors[v] for u, v in g.edges):
                return t
    raise AssertionError


def plain_backtracking_colorable(g, t):
    colors = [-1] * g.n

    def rec(v):
        if v == g.n:
            return True
        for c in range(t):
            if all(colors[u] != c for u in g.neighbors(v) if u < v):
                colors[v] = c
                if rec(v + 1):
                    return True
        colors[v] = -1
        return False

    return rec(0)


@st.composite
def simple_graphs(draw, max_n=7):
    n = draw(st.integers(0, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    edges = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph(n, edges)


@settings(max_examples=120, deadline=None)
@given(simple_graphs())
def test_exact_matches_brute_force(g):
    res = chromatic_number_exact(g)
    assert res.value == brute_chromatic(g)
    assert is_proper(g, res.coloring)
    assert res.clique_bound <= res.value <= res.greedy_bound
    assert is_proper(g, dsatur_greedy(g))


@settings(max_examples=60, deadline=None)
@given(simple_graphs(max_n=10), st.integers(1, 4))
def test_k_coloring_matches_plain_backtracking(g, t):
    col = k_coloring(g, t)
    assert (col is not None) == plain_backtracking_colorable(g, t)
    if col is not None:
        assert is_proper(g, col) and max(col, default=0) < t


def test_is_proper_examples():
    assert is_proper(complete_graph(2), [0, 1])
    assert not is_proper(Graph(1, [(0, 0)]), [0])
    assert is_proper(g_graph(5, 2, 1), inductive_coloring(5, 2, 1))


def test_chromatic_examples():
    assert chromatic_number(kneser_graph(5, 2)) == 3
    assert chromatic_number(categorical_product(complete_graph(2), complete_graph(4))) == 2
    assert chromatic_number(disjoint_union(complete_graph(4), complete_graph(4))) == 4
    assert chromatic_number(g_graph(7, 3, 2)) == 3
    assert chromatic_number(cycle_graph(7)) == 3
    assert max_clique_size(kneser_graph(7, 2)) == 3
    with pytest.raises(ValueError):
        chromatic_number(Graph(2, [(0, 0), (0, 1)]))


def test_solver_budget():
    with pytest.raises(BudgetExceeded):
        k_coloring(kneser_graph(7, 2), 4, node_budget=5)


@pytest.mark.parametrize(
    "n,k,i,colors",
    [(4, 2, 1, 2), (5, 2, 1, 3), (8, 3, 2, 4), (9, 3, 2, 5), (9, 4, 3, 3), (10, 3, 1, 6)],
)
def test_constructive_coloring(n, k, i, colors):
    c = inductive_coloring(n, k, i)
    assert c.palette_size == c.colors_used() == colors
    assert is_proper(g_graph(n, k, i), c)


def test_constructive_rejects_loops():
    with pytest.raises(ValueError):
        inductive_coloring(5, 2, 2)


def test_lovasz_bound():
    assert lovasz_bound(0) == 3
    assert lovasz_bound(-1) == 2
    assert lovasz_bound(6 - 4 - 1) == 6 - 4 + 2


def test_sol_round_trip():
    c = inductive_coloring(6, 2, 1)
    text = c.to_sol()
    assert text.startswith("s col 4\n")
    assert Coloring.from_sol(text) == c
    assert Coloring.from_list([0, 2, 1]).classes() == [[0], [2], [1]]


def test_checklist_alias():
    from kneser_covers.coloring import theorem3_coloring

    assert theorem3_coloring is inductive_coloring
