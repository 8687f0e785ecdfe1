"""Round-based approximation algorithms for proportionally fair matching.

Both solvers guess the optimum size ``T`` for every plausible value, build one
candidate per guess, and keep only candidates that pass the balance check
relaxed by the factor that guess certifies. The largest survivor wins; ties
go to the larger ``T`` because its certified bounds are the tighter ones.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from . import rainbow
from .graph import ColoredGraph, FairnessSpec, Matching, SolveReport, is_balanced


@dataclass(frozen=True)
class RoundState:
    """Residual edge set plus the matching built so far.

    Residual edges never touch a matched vertex.
    """

    graph: ColoredGraph
    residual: frozenset[int]
    matched: tuple[int, ...] = ()

    @classmethod
    def initial(cls, g: ColoredGraph) -> RoundState:
        return cls(g, frozenset(range(g.num_edges)))

    def after_picking(self, indices: tuple[int, ...]) -> RoundState:
        """Add ``indices`` to the matching and drop every residual edge touching them."""
        touched = set()
        for i in indices:
            u, v, _ = self.graph.edges[i]
            touched.update((u, v))
        residual = frozenset(
            j for j in self.residual
            if self.graph.edges[j][0] not in touched and self.graph.edges[j][1] not in touched)
        return RoundState(self.graph, residual, self.matched + tuple(indices))

    def matching(self) -> Matching:
        return Matching.of(self.graph, self.matched)

    def color_counts(self) -> list[int]:
        counts = [0] * self.graph.num_colors
        for i in self.matched:
            counts[self.graph.edges[i][2]] += 1
        return counts


def run_round(state: RoundState, *, stop_at: int | None = None,
              color_allowed: Callable[[int, list[int]], bool] | None = None) -> RoundState:
    """One greedy sweep over colors ``0..l-1``.

    For each color with a residual edge, the lowest-index such edge is matched
    and its neighbourhood removed. ``stop_at`` ends the sweep as soon as the
    matching reaches that many edges; ``color_allowed(c, counts)`` can veto a
    color before it is served.
    """
    g = state.graph
    counts = state.color_counts()
    for c in range(g.num_colors):
        if stop_at is not None and len(state.matched) >= stop_at:
            break
        if color_allowed is not None and not color_allowed(c, counts):
            continue
        pick = next((i for i in g.edges_of_color(c) if i in state.residual), None)
        if pick is None:
            continue
        state = state.after_picking((pick,))
        counts[c] += 1
    return state


def _run_rounds(state: RoundState, stop_at: int,
                color_allowed: Callable[[int, list[int]], bool] | None = None) -> RoundState:
    while len(state.matched) < stop_at and state.residual:
        nxt = run_round(state, stop_at=stop_at, color_allowed=color_allowed)
        if nxt.matched == state.matched:
            break
        state = nxt
    return state


@dataclass(frozen=True)
class ProbeOutcome:
    """Candidate built for one guess ``T`` of the optimum size.

    ``discarded`` is set when the candidate fails the bounds certified by
    ``T`` (``report`` then still describes it) or when it is empty (``report``
    is ``None``).
    """

    T: int
    report: SolveReport | None
    discarded: bool


def _pick_best(probes) -> SolveReport | None:
    """Largest surviving candidate; ties go to the larger T (tighter bounds)."""
    best = None
    for p in probes:
        if p.discarded:
            continue
        if best is None or (p.report.size, p.T) > (best.size, best.probed_T):
            best = p.report
    return best


def probe_alpha_positive(g: ColoredGraph, spec: FairnessSpec) -> list[ProbeOutcome]:
    """One outcome per guess ``T`` in ``l..n//2``; empty if no rainbow matching uses every color."""
    if spec.alpha == 0:
        raise ValueError("alpha = 0 is the beta-limited case; use solve_beta_limited")
    ell = g.num_colors
    start = rainbow.find_rainbow_matching(g, rainbow.RainbowQuery(ell))
    if start is None:
        return []
    seeded = RoundState.initial(g).after_picking(tuple(start.sorted_indices()))

    out = []
    for T in range(ell, g.num_vertices // 2 + 1):
        slack = 1 + Fraction(4 * ell, T)
        if T <= 4 * ell * ell:
            candidate = start
        else:
            candidate = _run_rounds(seeded, math.ceil(Fraction(T, 4 * ell))).matching()
        lower, upper = spec.alpha / slack, spec.beta * slack
        ok = is_balanced(candidate, g, FairnessSpec(lower, min(upper, Fraction(1))))
        out.append(ProbeOutcome(T, SolveReport.build(candidate, lower, upper, T), not ok))
    return out


def solve_alpha_positive(g: ColoredGraph, spec: FairnessSpec) -> SolveReport | None:
    """Approximate a maximum fair matching when ``alpha > 0``.

    Returns ``None`` when the graph has no rainbow matching using every color
    (then no fair matching exists) or when every probe is discarded.
    """
    return _pick_best(probe_alpha_positive(g, spec))


def probe_beta_limited(g: ColoredGraph, spec: FairnessSpec) -> list[ProbeOutcome]:
    """One outcome per guess ``T`` in ``1..n//2``."""
    if spec.alpha != 0:
        raise ValueError("solve_beta_limited requires alpha = 0")
    if g.num_edges == 0:
        return []
    ell = g.num_colors
    beta = spec.beta

    out = []
    for T in range(1, g.num_vertices // 2 + 1):
        if T <= 2 * ell:
            candidate = Matching.of(g, (0,))
        else:
            cap = beta * Fraction(T, 2 * ell)
            stop = math.ceil(Fraction(T, 2 * ell) - 1)
            state = _run_rounds(RoundState.initial(g), stop,
                                lambda c, counts: counts[c] < cap)
            candidate = state.matching()
        if candidate.size == 0:
            out.append(ProbeOutcome(T, None, True))
            continue
        upper = beta * (1 + Fraction(2 * ell, T))
        report = SolveReport.build(candidate, Fraction(0), upper, T)
        out.append(ProbeOutcome(T, report, max(candidate.fractions()) > upper))
    return out


def solve_beta_limited(g: ColoredGraph, spec: FairnessSpec) -> SolveReport | None:
    """Approximate a maximum matching with every color share at most ``beta``.

    Polynomial time: only greedy rounds, never the rainbow search.
    """
    return _pick_best(probe_beta_limited(g, spec))
