"""Exact search for rainbow matchings: ``k`` vertex-disjoint edges with distinct colors.

Depth-first branch and bound over colors (scarcest first). At each color the
search either takes one of its free edges, lowest index first, or skips the
color. A branch is cut when the colors still having a free edge cannot make
up the missing edges. Failed states are memoized on
``(color position, edges still needed, used vertices still relevant)``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import ColoredGraph, Matching


class RainbowBudgetExceeded(RuntimeError):
    """The node-expansion budget ran out before the search was decided."""


@dataclass(frozen=True)
class RainbowQuery:
    target_size: int
    time_budget: int | None = None

    def __post_init__(self) -> None:
        if self.target_size < 1:
            raise ValueError("target_size must be >= 1")
        if self.time_budget is not None and self.time_budget < 1:
            raise ValueError("time_budget must be positive when given")


def find_rainbow_matching(g: ColoredGraph, query: RainbowQuery | int) -> Matching | None:
    """Return a rainbow matching of exactly ``k`` edges, or ``None`` if none exists.

    Raises :class:`RainbowBudgetExceeded` if ``query.time_budget`` node
    expansions are not enough to decide. Deterministic for a given input.
    """
    if isinstance(query, int):
        query = RainbowQuery(query)
    k = query.target_size
    if k > g.num_colors or 2 * k > g.num_vertices:
        return None

    order = sorted((c for c in range(g.num_colors) if g.edges_of_color(c)),
                   key=lambda c: (len(g.edges_of_color(c)), c))
    if len(order) < k:
        return None
    ends = [(1 << g.edges[i][0]) | (1 << g.edges[i][1]) for i in range(g.num_edges)]
    color_edges = [[(i, ends[i]) for i in g.edges_of_color(c)] for c in order]
    # vertices touched by colors at positions >= p; used bits outside it never matter again
    relevant = [0] * (len(order) + 1)
    for p in range(len(order) - 1, -1, -1):
        mask = relevant[p + 1]
        for _, e in color_edges[p]:
            mask |= e
        relevant[p] = mask

    failed: set[tuple[int, int, int]] = set()
    chosen: list[int] = []
    budget = query.time_budget
    expanded = 0

    def search(p: int, need: int, used: int) -> bool:
        nonlocal expanded
        if need == 0:
            return True
        key = (p, need, used & relevant[p])
        if key in failed:
            return False
        expanded += 1
        if budget is not None and expanded > budget:
            raise RainbowBudgetExceeded(f"exceeded {budget} node expansions")
        live = 0
        for q in range(p, len(order)):
            if any(not (e & used) for _, e in color_edges[q]):
                live += 1
                if live >= need:
                    break
        if live < need:
            failed.add(key)
            return False
        for i, e in color_edges[p]:
            if not (e & used):
                chosen.append(i)
                if search(p + 1, need - 1, used | e):
                    return True
                chosen.pop()
        if search(p + 1, need, used):
            return True
        failed.add(key)
        return False

    if search(0, k, 0):
        return Matching.of(g, chosen)
    return None
