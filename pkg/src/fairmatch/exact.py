"""Randomized exact algorithm for a fair matching of a given size ``k`` (color coding).

Each original color gets its own block of fresh colors, and every edge is
recolored uniformly within its block. A rainbow matching of size ``k`` in the
recolored graph uses at most (block size) edges per original color, so block
sizes encode the fairness bounds:

* ``alpha = 0``: every block has ``floor(beta * k)`` colors;
* ``alpha > 0``: a composition ``k_1 + ... + k_l = k`` with
  ``ceil(alpha*k) <= k_j <= floor(beta*k)`` is guessed, and block ``j`` has
  ``k_j`` colors, so a size-``k`` rainbow matching uses exactly ``k_j`` of them.

A fixed fair matching becomes rainbow with probability at least
``prod k_j!/k_j**k_j >= e**-k``, hence ``ceil(e**k * ln(1/eps))`` trials per
block layout. Everything returned is re-verified against the original spec.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

import numpy as np

from . import rainbow
from .graph import ColoredGraph, FairnessSpec, Matching, is_balanced


@dataclass(frozen=True)
class ExactQuery:
    k: int
    spec: FairnessSpec
    seed: int = 0
    failure_prob: Fraction = Fraction(1, 1000)

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValueError("k must be >= 1")
        p = Fraction(self.failure_prob)
        if not 0 < p < 1:
            raise ValueError("failure_prob must lie strictly between 0 and 1")
        object.__setattr__(self, "failure_prob", p)


@dataclass(frozen=True)
class Recoloring:
    """New color per edge, and the block of new colors owned by each original color."""

    mapping: tuple[int, ...]
    groups: tuple[range, ...]

    @property
    def num_colors(self) -> int:
        return sum(len(r) for r in self.groups)


@dataclass(frozen=True)
class Composition:
    parts: tuple[int, ...]


@dataclass(frozen=True)
class ExactOutcome:
    """Full transcript of one :func:`run_exact` call.

    ``proven_absent`` is set when absence follows without randomness (for
    example ``l > k`` with ``alpha > 0``); otherwise a ``None`` matching only
    holds with confidence ``1 - failure_prob``.
    """

    matching: Matching | None
    trials_run: int
    composition: Composition | None
    success_trial: int | None
    proven_absent: bool


def trial_count(k: int, failure_prob: Fraction | float) -> int:
    """Trials so that ``(1 - e**-k) ** trials <= failure_prob``; at least one."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return max(1, math.ceil(math.exp(k) * math.log(1 / float(failure_prob))))


def recolor_blocks(g: ColoredGraph, sizes: Sequence[int],
                   rng: np.random.Generator) -> tuple[ColoredGraph, Recoloring]:
    """Recolor each edge of original color ``c`` uniformly into a block of ``sizes[c]`` colors.

    Raises ``ValueError`` if a color that has edges gets an empty block.
    """
    if len(sizes) != g.num_colors:
        raise ValueError("one block size per original color required")
    groups = []
    offset = 0
    for s in sizes:
        groups.append(range(offset, offset + s))
        offset += s
    colors = np.fromiter((c for _, _, c in g.edges), dtype=np.int64, count=g.num_edges)
    widths = np.asarray(sizes, dtype=np.int64)[colors]
    if np.any(widths == 0):
        raise ValueError("an edge's original color has an empty block")
    starts = np.asarray([r.start for r in groups], dtype=np.int64)[colors]
    mapping = starts + rng.integers(0, widths)
    rec = Recoloring(tuple(int(x) for x in mapping), tuple(groups))
    return g.recolored(rec.mapping, max(1, offset)), rec


def recolor_beta_limited(g: ColoredGraph, k: int, beta: Fraction,
                         rng: np.random.Generator) -> tuple[ColoredGraph, Recoloring]:
    block = math.floor(Fraction(beta) * k)
    if block < 1:
        raise ValueError(f"no fair matching of size {k} can exist: floor(beta*k) = 0")
    return recolor_blocks(g, [block] * g.num_colors, rng)


def enumerate_compositions(k: int, l: int, spec: FairnessSpec) -> Iterator[Composition]:
    """All ``(k_1..k_l)`` with sum ``k`` and ``ceil(alpha*k) <= k_j <= floor(beta*k)``, lexicographic."""
    lo = math.ceil(spec.alpha * k)
    hi = math.floor(spec.beta * k)
    if l > k and spec.alpha > 0:
        return
    parts: list[int] = []

    def rec(j: int, left: int) -> Iterator[Composition]:
        if j == l:
            if left == 0:
                yield Composition(tuple(parts))
            return
        rest = l - j - 1
        for x in range(lo, hi + 1):
            if left - x < lo * rest:
                break
            if left - x > hi * rest:
                continue
            parts.append(x)
            yield from rec(j + 1, left - x)
            parts.pop()

    yield from rec(0, k)


def _trial_rng(seed: int, layout: int, trial: int) -> np.random.Generator:
    return np.random.default_rng([seed & 0xFFFFFFFFFFFFFFFF, layout, trial])


def _layouts(g: ColoredGraph, q: ExactQuery) -> Iterator[tuple[Composition | None, list[int]]]:
    k, spec = q.k, q.spec
    if spec.alpha == 0:
        block = math.floor(spec.beta * k)
        yield None, [block] * g.num_colors
        return
    for comp in enumerate_compositions(k, g.num_colors, spec):
        if all(len(g.edges_of_color(c)) >= x for c, x in enumerate(comp.parts)):
            yield comp, list(comp.parts)


def run_exact(g: ColoredGraph, q: ExactQuery, *,
              rainbow_budget: int | None = None) -> ExactOutcome:
    k, spec = q.k, q.spec
    absent = ExactOutcome(None, 0, None, None, True)
    if 2 * k > g.num_vertices or k > g.num_edges:
        return absent
    if spec.alpha > 0 and g.num_colors > k:
        return absent
    if spec.alpha == 0 and math.floor(spec.beta * k) < 1:
        return absent

    trials = trial_count(k, q.failure_prob)
    total = 0
    any_layout = False
    for layout_index, (comp, sizes) in enumerate(_layouts(g, q)):
        any_layout = True
        for t in range(trials):
            total += 1
            h, _ = recolor_blocks(g, sizes, _trial_rng(q.seed, layout_index, t))
            try:
                found = rainbow.find_rainbow_matching(
                    h, rainbow.RainbowQuery(k, rainbow_budget))
            except rainbow.RainbowBudgetExceeded:
                continue
            if found is None:
                continue
            m = Matching.of(g, found.edge_indices)
            if m.size == k and is_balanced(m, g, spec):
                return ExactOutcome(m, total, comp, t, False)
            raise AssertionError("color-coding pull-back produced an unfair matching")
    return ExactOutcome(None, total, None, None, not any_layout)


def solve_exact(g: ColoredGraph, q: ExactQuery) -> Matching | None:
    """A fair matching of exactly ``q.k`` edges, or ``None``.

    A returned matching is always verified. ``None`` is wrong with
    probability at most ``q.failure_prob`` when a solution exists.
    """
    return run_exact(g, q).matching
