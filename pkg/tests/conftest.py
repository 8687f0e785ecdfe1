from __future__ import annotations

import itertools
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from fairmatch.graph import ColoredGraph, FairnessSpec, Matching, is_balanced


@st.composite
def colored_graphs(draw, max_vertices=8, max_colors=4, max_edges=12, min_edges=0):
    n = draw(st.integers(2, max_vertices))
    l = draw(st.integers(1, max_colors))
    pairs = list(itertools.combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True,
                           min_size=min(min_edges, len(pairs)),
                           max_size=min(max_edges, len(pairs))))
    colors = draw(st.lists(st.integers(0, l - 1), min_size=len(chosen), max_size=len(chosen)))
    return ColoredGraph(n, tuple((u, v, c) for (u, v), c in zip(chosen, colors)), l)


def all_matchings_naive(g: ColoredGraph):
    """Every nonempty edge subset that is a matching, by plain subset enumeration."""
    for r in range(1, g.num_vertices // 2 + 1):
        for combo in itertools.combinations(range(g.num_edges), r):
            ends = [x for i in combo for x in g.edges[i][:2]]
            if len(ends) == len(set(ends)):
                yield combo


def naive_opt(g: ColoredGraph, spec: FairnessSpec) -> int:
    best = 0
    for combo in all_matchings_naive(g):
        if len(combo) > best and is_balanced(Matching.of(g, combo), g, spec):
            best = len(combo)
    return best


def path_graph(colors, offset=0) -> ColoredGraph:
    """Path ``0-1-2-...`` whose ``i``-th edge has 0-based color ``colors[i]``."""
    edges = tuple((i, i + 1, c) for i, c in enumerate(colors))
    return ColoredGraph(len(colors) + 1, edges, max(colors) + 1)


def disjoint_edges(colors) -> ColoredGraph:
    edges = tuple((2 * i, 2 * i + 1, c) for i, c in enumerate(colors))
    return ColoredGraph(2 * len(colors), edges, max(colors) + 1)


def star(colors) -> ColoredGraph:
    edges = tuple((0, i + 1, c) for i, c in enumerate(colors))
    return ColoredGraph(len(colors) + 1, edges, max(colors) + 1)


@pytest.fixture
def half():
    return Fraction(1, 2)
