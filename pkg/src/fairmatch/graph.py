"""Edge-colored graphs, matchings, fairness specs and the ``.fpm`` text format.

Vertices and colors are 0-based inside the library. The text format is
1-based; :func:`parse_graph` and :func:`serialize_graph` are the only places
that translate between the two.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

Edge = tuple[int, int, int]


class GraphError(ValueError):
    """Raised when a graph violates the data-model invariants."""


class ParseError(ValueError):
    """Base class for ``.fpm`` parse failures; carries the offending line."""

    def __init__(self, lineno: int, message: str):
        self.lineno = lineno
        super().__init__(f"line {lineno}: {message}")


class HeaderError(ParseError):
    pass


class IdRangeError(ParseError):
    pass


class DuplicateEdgeError(ParseError):
    pass


class SelfLoopError(ParseError):
    pass


class EdgeCountError(ParseError):
    pass


class MatchingError(ValueError):
    """Raised when a set of edges is not a matching."""


class UndefinedBalanceError(ValueError):
    """Balance of the empty matching is 0/0."""


@dataclass(frozen=True)
class ColoredGraph:
    """Simple undirected graph with every edge carrying one of ``num_colors`` colors."""

    num_vertices: int
    edges: tuple[Edge, ...]
    num_colors: int
    _by_color: tuple[tuple[int, ...], ...] = field(
        init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "edges", tuple(tuple(e) for e in self.edges))
        if self.num_vertices < 1:
            raise GraphError("num_vertices must be positive")
        if self.num_colors < 1:
            raise GraphError("num_colors must be positive")
        seen = set()
        by_color: list[list[int]] = [[] for _ in range(self.num_colors)]
        for i, (u, v, c) in enumerate(self.edges):
            if not (0 <= u < self.num_vertices and 0 <= v < self.num_vertices):
                raise GraphError(f"edge {i}: vertex out of range")
            if not 0 <= c < self.num_colors:
                raise GraphError(f"edge {i}: color out of range")
            if u == v:
                raise GraphError(f"edge {i}: self-loop on vertex {u}")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise GraphError(f"edge {i}: duplicate edge {key}")
            seen.add(key)
            by_color[c].append(i)
        object.__setattr__(self, "_by_color", tuple(map(tuple, by_color)))

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def color(self, i: int) -> int:
        return self.edges[i][2]

    def edges_of_color(self, c: int) -> tuple[int, ...]:
        """Indices of the edges with color ``c``, ascending."""
        return self._by_color[c]

    def recolored(self, colors: Sequence[int], num_colors: int) -> ColoredGraph:
        """Same vertices and edges (same indices), new color per edge."""
        return ColoredGraph(
            self.num_vertices,
            tuple((u, v, c) for (u, v, _), c in zip(self.edges, colors)),
            num_colors,
        )


@dataclass(frozen=True)
class Matching:
    """A set of pairwise vertex-disjoint edges of some graph plus per-color counts."""

    edge_indices: frozenset[int]
    color_counts: tuple[int, ...]

    @classmethod
    def of(cls, g: ColoredGraph, indices: Iterable[int]) -> Matching:
        idx = frozenset(indices)
        used: set[int] = set()
        counts = [0] * g.num_colors
        for i in sorted(idx):
            if not 0 <= i < g.num_edges:
                raise MatchingError(f"edge index {i} out of range")
            u, v, c = g.edges[i]
            if u in used or v in used:
                raise MatchingError(f"edge {i} shares a vertex with another edge")
            used.update((u, v))
            counts[c] += 1
        return cls(idx, tuple(counts))

    @classmethod
    def empty(cls, g: ColoredGraph) -> Matching:
        return cls(frozenset(), (0,) * g.num_colors)

    @property
    def size(self) -> int:
        return len(self.edge_indices)

    def __len__(self) -> int:
        return len(self.edge_indices)

    def sorted_indices(self) -> list[int]:
        return sorted(self.edge_indices)

    def fractions(self) -> tuple[Fraction, ...]:
        if not self.edge_indices:
            raise UndefinedBalanceError("undefined balance: empty matching")
        return tuple(Fraction(x, self.size) for x in self.color_counts)


@dataclass(frozen=True)
class FairnessSpec:
    """Bounds ``alpha <= |M_c|/|M| <= beta`` on every color share, as exact rationals."""

    alpha: Fraction
    beta: Fraction

    def __post_init__(self) -> None:
        a, b = Fraction(self.alpha), Fraction(self.beta)
        if not 0 <= a <= b <= 1:
            raise ValueError(f"need 0 <= alpha <= beta <= 1, got alpha={a}, beta={b}")
        object.__setattr__(self, "alpha", a)
        object.__setattr__(self, "beta", b)

    @classmethod
    def parse(cls, alpha: str | Fraction | int, beta: str | Fraction | int) -> FairnessSpec:
        return cls(parse_rational(alpha), parse_rational(beta))

    @property
    def beta_limited(self) -> bool:
        return self.alpha == 0


def parse_rational(text: str | Fraction | int) -> Fraction:
    """``"1/4"``, ``"0.25"`` and ``"1"`` all give exact fractions (no float detour)."""
    if isinstance(text, (Fraction, int)):
        return Fraction(text)
    if isinstance(text, float):
        raise TypeError("floats are not accepted; pass a string such as '0.25'")
    return Fraction(text.strip())


@dataclass(frozen=True)
class SolveReport:
    matching: Matching
    size: int
    fractions: tuple[Fraction, ...]
    certified_lower: Fraction
    certified_upper: Fraction
    probed_T: int | None = None

    @classmethod
    def build(cls, m: Matching, lower: Fraction, upper: Fraction,
              probed_T: int | None = None) -> SolveReport:
        return cls(m, m.size, m.fractions(), Fraction(lower), Fraction(upper), probed_T)

    def to_json(self, g: ColoredGraph) -> dict:
        return {
            "size": self.size,
            "edges": matching_edges_json(g, self.matching),
            "edge_indices": [i + 1 for i in self.matching.sorted_indices()],
            "fractions": {str(c + 1): _frac_str(f) for c, f in enumerate(self.fractions)},
            "certified_lower": _frac_str(self.certified_lower),
            "certified_upper": _frac_str(self.certified_upper),
            "probed_T": self.probed_T,
        }


def _frac_str(f: Fraction) -> str:
    return f"{f.numerator}/{f.denominator}"


def matching_edges_json(g: ColoredGraph, m: Matching) -> list[list[int]]:
    return [[g.edges[i][0] + 1, g.edges[i][1] + 1, g.edges[i][2] + 1]
            for i in m.sorted_indices()]


def is_balanced(m: Matching, g: ColoredGraph, spec: FairnessSpec) -> bool:
    """True iff every color's share of ``m`` lies in ``[spec.alpha, spec.beta]``.

    Colors absent from ``m`` count as share 0, so ``alpha > 0`` forces every
    color of ``g`` to appear.
    """
    if len(m.color_counts) != g.num_colors:
        raise MatchingError("matching was built for a graph with a different color count")
    if m.size == 0:
        raise UndefinedBalanceError("undefined balance: empty matching")
    return all(spec.alpha * m.size <= x <= spec.beta * m.size for x in m.color_counts)


class Feasibility(enum.Enum):
    MAYBE_FEASIBLE = "maybe_feasible"
    PROVABLY_INFEASIBLE = "provably_infeasible"


def feasibility_precheck(g: ColoredGraph, spec: FairnessSpec) -> Feasibility:
    """Cheap necessary condition ``alpha <= 1/l <= beta`` for a nonempty fair matching.

    The smallest color share of any matching is at most ``1/l`` and the
    largest is at least ``1/l``. With ``alpha > 0`` every color also needs an edge.
    """
    share = Fraction(1, g.num_colors)
    if spec.alpha > share or spec.beta < share:
        return Feasibility.PROVABLY_INFEASIBLE
    if spec.alpha > 0 and any(not g.edges_of_color(c) for c in range(g.num_colors)):
        return Feasibility.PROVABLY_INFEASIBLE
    return Feasibility.MAYBE_FEASIBLE


def parse_graph(text: str) -> ColoredGraph:
    header = None
    edges: list[Edge] = []
    seen: dict[tuple[int, int], int] = {}
    last_line = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        last_line = lineno
        parts = raw.split()
        if not parts or parts[0].startswith("c"):
            continue
        tag = parts[0]
        if tag == "p":
            if header is not None:
                raise HeaderError(lineno, "second header line")
            if len(parts) != 5 or parts[1] != "fpm":
                raise HeaderError(lineno, "expected 'p fpm <n> <m> <l>'")
            try:
                n, m, l = (int(x) for x in parts[2:])
            except ValueError:
                raise HeaderError(lineno, "header counts must be integers") from None
            if n < 1 or m < 0 or l < 1:
                raise HeaderError(lineno, "need n >= 1, m >= 0, l >= 1")
            header = (n, m, l)
        elif tag == "e":
            if header is None:
                raise HeaderError(lineno, "edge line before header")
            if len(parts) != 4:
                raise ParseError(lineno, "expected 'e <u> <v> <color>'")
            try:
                u, v, c = (int(x) for x in parts[1:])
            except ValueError:
                raise ParseError(lineno, "edge fields must be integers") from None
            n, m, l = header
            if not (1 <= u <= n and 1 <= v <= n):
                raise IdRangeError(lineno, f"vertex id out of range 1..{n}")
            if not 1 <= c <= l:
                raise IdRangeError(lineno, f"color id out of range 1..{l}")
            if u == v:
                raise SelfLoopError(lineno, f"self-loop on vertex {u}")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise DuplicateEdgeError(
                    lineno, f"edge {key} already given on line {seen[key]}")
            seen[key] = lineno
            if len(edges) == m:
                raise EdgeCountError(lineno, f"more than the {m} declared edges")
            edges.append((u - 1, v - 1, c - 1))
        else:
            raise ParseError(lineno, f"unknown record type {tag!r}")
    if header is None:
        raise HeaderError(last_line, "missing 'p fpm' header")
    n, m, l = header
    if len(edges) != m:
        raise EdgeCountError(last_line, f"header declares {m} edges, found {len(edges)}")
    return ColoredGraph(n, tuple(edges), l)


def serialize_graph(g: ColoredGraph, comments: Sequence[str] = ()) -> str:
    lines = [f"c {c}" for c in comments]
    lines.append(f"p fpm {g.num_vertices} {g.num_edges} {g.num_colors}")
    lines.extend(f"e {u + 1} {v + 1} {c + 1}" for u, v, c in g.edges)
    return "\n".join(lines) + "\n"


def random_graph(n: int, l: int, edge_prob: Fraction, seed: int) -> ColoredGraph:
    """Each pair ``u < v`` is an edge with probability ``edge_prob``, color uniform in ``0..l-1``."""
    rng = np.random.default_rng(seed & 0xFFFFFFFFFFFFFFFF)
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    keep = rng.random(len(pairs)) < float(edge_prob)
    colors = rng.integers(0, l, size=len(pairs))
    edges = tuple((u, v, int(c)) for (u, v), k, c in zip(pairs, keep, colors) if k)
    return ColoredGraph(n, edges, l)
