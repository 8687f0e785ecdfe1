"""Exhaustive ground truth for small instances.

Whether a matching is balanced depends only on its color-count vector. The
oracle therefore goes through sizes ``s`` from large to small and, for each
count vector that is balanced at size ``s``, asks whether some matching has
exactly those counts. That question is answered by exhaustive search over
vertices: the next free vertex is either left unmatched or matched along one
of its edges. The only pruning is exactness (never exceed a color's count) and
"not enough free vertices left". Failed states are memoized, which is what makes
long paths tractable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator

from .graph import ColoredGraph, FairnessSpec, Matching, is_balanced

DEFAULT_MAX_EDGES = 24


class OracleCapExceeded(ValueError):
    """The instance has more edges than the oracle was allowed to handle."""


@dataclass(frozen=True)
class OracleResult:
    opt_size: int
    opt_matching: Matching | None
    per_color: tuple[int, ...]
    min_color: tuple[int, int] | None


def iter_matchings(g: ColoredGraph) -> Iterator[tuple[int, ...]]:
    """Every matching of ``g`` (including the empty one) as ascending edge indices."""
    chosen: list[int] = []

    def rec(start: int, used: int) -> Iterator[tuple[int, ...]]:
        yield tuple(chosen)
        for i in range(start, g.num_edges):
            u, v, _ = g.edges[i]
            bits = (1 << u) | (1 << v)
            if not bits & used:
                chosen.append(i)
                yield from rec(i + 1, used | bits)
                chosen.pop()

    yield from rec(0, 0)


def balanced_count_vectors(g: ColoredGraph, spec: FairnessSpec,
                           size: int) -> Iterator[tuple[int, ...]]:
    """Count vectors summing to ``size`` with every share in ``[alpha, beta]``.

    Vectors asking for more edges of a color than the graph has are skipped.
    Yielded in lexicographic order.
    """
    lo = math.ceil(spec.alpha * size)
    hi = math.floor(spec.beta * size)
    caps = [min(hi, len(g.edges_of_color(c))) for c in range(g.num_colors)]
    ell = g.num_colors
    # most the colors from position p onwards can contribute
    tail = [0] * (ell + 1)
    for c in range(ell - 1, -1, -1):
        tail[c] = tail[c + 1] + caps[c]
    prefix: list[int] = []

    def rec(c: int, left: int) -> Iterator[tuple[int, ...]]:
        if c == ell:
            if left == 0:
                yield tuple(prefix)
            return
        rest_min = lo * (ell - c - 1)
        for x in range(lo, caps[c] + 1):
            if x > left - rest_min:
                break
            if left - x > tail[c + 1]:
                continue
            prefix.append(x)
            yield from rec(c + 1, left - x)
            prefix.pop()

    if lo > hi:
        return
    yield from rec(0, size)


class _CountSearch:
    """Does ``g`` have a matching with an exact color-count vector?"""

    def __init__(self, g: ColoredGraph, reverse: bool = False):
        self.g = g
        n = g.num_vertices
        self.order = list(range(n - 1, -1, -1)) if reverse else list(range(n))
        pos = {v: p for p, v in enumerate(self.order)}
        incident: list[list[tuple[int, int, int]]] = [[] for _ in range(n)]
        for i, (u, v, c) in enumerate(g.edges):
            incident[u].append((i, v, c))
            incident[v].append((i, u, c))
        # an edge is branched on from its endpoint that comes first in the order
        self.forward = []
        for v in self.order:
            out = [(i, 1 << w, c) for i, w, c in incident[v] if pos[w] > pos[v]]
            out.sort(reverse=reverse)
            self.forward.append(out)
        self.later = [0] * (n + 1)
        for p in range(n - 1, -1, -1):
            self.later[p] = self.later[p + 1] | (1 << self.order[p])
        self.failed: set[tuple[int, int, tuple[int, ...]]] = set()

    def find(self, counts: tuple[int, ...]) -> list[int] | None:
        chosen: list[int] = []
        order, forward, later, failed = self.order, self.forward, self.later, self.failed
        n = len(order)

        def rec(p: int, used: int, need: tuple[int, ...], left: int) -> bool:
            if left == 0:
                return True
            while p < n and used >> order[p] & 1:
                p += 1
            free = n - p - bin(used & later[p]).count("1")
            if 2 * left > free:
                return False
            key = (p, used & later[p], need)
            if key in failed:
                return False
            vbit = 1 << order[p]
            for i, wbit, c in forward[p]:
                if need[c] and not used & wbit:
                    chosen.append(i)
                    nxt = need[:c] + (need[c] - 1,) + need[c + 1:]
                    if rec(p + 1, used | vbit | wbit, nxt, left - 1):
                        return True
                    chosen.pop()
            if rec(p + 1, used | vbit, need, left):
                return True
            failed.add(key)
            return False

        if rec(0, 0, tuple(counts), sum(counts)):
            return chosen
        return None


def _check_cap(g: ColoredGraph, max_edges: int | None) -> None:
    if max_edges is not None and g.num_edges > max_edges:
        raise OracleCapExceeded(
            f"graph has {g.num_edges} edges, oracle cap is {max_edges}")


def _find_of_size(search: _CountSearch, g: ColoredGraph, spec: FairnessSpec,
                  size: int) -> Matching | None:
    for counts in balanced_count_vectors(g, spec, size):
        found = search.find(counts)
        if found is not None:
            m = Matching.of(g, found)
            if not is_balanced(m, g, spec) or m.size != size:
                raise AssertionError("oracle produced an unbalanced witness")
            return m
    return None


def brute_force_opt(g: ColoredGraph, spec: FairnessSpec, *,
                    max_edges: int | None = DEFAULT_MAX_EDGES,
                    reverse: bool = False) -> OracleResult:
    """Maximum size of an ``(alpha, beta)``-balanced matching, with a witness.

    ``reverse=True`` runs the same search with vertex and edge orders
    reversed; both orders must agree on ``opt_size``. Raises
    :class:`OracleCapExceeded` rather than answering on large graphs.
    """
    _check_cap(g, max_edges)
    search = _CountSearch(g, reverse)
    for size in range(min(g.num_vertices // 2, g.num_edges), 0, -1):
        m = _find_of_size(search, g, spec, size)
        if m is not None:
            per_color = m.color_counts
            c_star = min(range(g.num_colors), key=lambda c: (per_color[c], c))
            return OracleResult(size, m, per_color, (c_star, per_color[c_star]))
    return OracleResult(0, None, (0,) * g.num_colors, None)


def exists_fair_of_size(g: ColoredGraph, spec: FairnessSpec, k: int, *,
                        max_edges: int | None = DEFAULT_MAX_EDGES,
                        reverse: bool = False) -> bool:
    _check_cap(g, max_edges)
    if k < 1 or 2 * k > g.num_vertices:
        return False
    return _find_of_size(_CountSearch(g, reverse), g, spec, k) is not None


def find_fair_of_size(g: ColoredGraph, spec: FairnessSpec, k: int, *,
                      max_edges: int | None = DEFAULT_MAX_EDGES) -> Matching | None:
    """Witness version of :func:`exists_fair_of_size`."""
    _check_cap(g, max_edges)
    if k < 1 or 2 * k > g.num_vertices:
        return None
    return _find_of_size(_CountSearch(g), g, spec, k)
