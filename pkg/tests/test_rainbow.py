import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings

from fairmatch.graph import ColoredGraph, random_graph
from fairmatch.rainbow import RainbowBudgetExceeded, RainbowQuery, find_rainbow_matching

from conftest import colored_graphs, disjoint_edges, star


def exhaustive_rainbow(g, k):
    """Any k-subset of edges that is a matching with distinct colors?"""
    for combo in itertools.combinations(range(g.num_edges), k):
        ends = [x for i in combo for x in g.edges[i][:2]]
        colors = {g.edges[i][2] for i in combo}
        if len(set(ends)) == 2 * k and len(colors) == k:
            return True
    return False


def max_rainbow_exhaustive(g):
    best = 0
    for k in range(1, min(g.num_colors, g.num_vertices // 2) + 1):
        if exhaustive_rainbow(g, k):
            best = k
    return best


def assert_rainbow(g, m, k):
    assert m.size == k
    ends = [x for i in m.edge_indices for x in g.edges[i][:2]]
    assert len(set(ends)) == 2 * k
    assert len({g.edges[i][2] for i in m.edge_indices}) == k


def test_star_has_no_rainbow_pair():
    assert find_rainbow_matching(star([0, 1, 2]), 2) is None


@pytest.mark.parametrize("k", [1, 3, 6])
def test_disjoint_edges_give_full_rainbow(k):
    g = disjoint_edges(list(range(k)))
    m = find_rainbow_matching(g, k)
    assert m is not None and m.edge_indices == frozenset(range(k))


@pytest.mark.parametrize("seed", range(12))
def test_random_graph_matches_exhaustive_maximum(seed):
    g = random_graph(10, 5, Fraction(7, 20), seed)
    best = max_rainbow_exhaustive(g)
    for k in range(1, 6):
        m = find_rainbow_matching(g, k)
        if k <= best:
            assert_rainbow(g, m, k)
        else:
            assert m is None


@settings(max_examples=300, deadline=None)
@given(colored_graphs(max_vertices=9, max_colors=5, max_edges=12))
def test_agrees_with_exhaustive_enumeration(g):
    for k in range(1, 6):
        m = find_rainbow_matching(g, k)
        assert (m is not None) == exhaustive_rainbow(g, k)
        if m is not None:
            assert_rainbow(g, m, k)


@settings(max_examples=50, deadline=None)
@given(colored_graphs(max_vertices=9, max_colors=5, max_edges=12))
def test_deterministic(g):
    for k in (1, 2, 3):
        assert find_rainbow_matching(g, k) == find_rainbow_matching(g, k)


def test_budget_exhaustion_is_distinct_from_absence():
    # 3 colors, every pair of edges shares a vertex or a color: undecidable in 1 node
    g = ColoredGraph(8, tuple((u, v, (u + v) % 3) for u in range(4) for v in range(4, 8)), 3)
    with pytest.raises(RainbowBudgetExceeded):
        find_rainbow_matching(g, RainbowQuery(3, time_budget=1))
    assert find_rainbow_matching(g, RainbowQuery(3, time_budget=10_000)) is not None


def test_trivial_bounds():
    g = disjoint_edges([0, 1])
    assert find_rainbow_matching(g, 3) is None
    with pytest.raises(ValueError):
        RainbowQuery(0)
