"""3SAT-3 formulas and their path instances.

A 3SAT-3 formula has clauses of 2 or 3 literals and every variable occurring
exactly three times, twice in one polarity and once in the other. Clause ``j``
becomes color ``j``. Variable ``i`` becomes a 3-edge path whose edges carry the
colors of its three clauses, with the lone-polarity occurrence in the middle.
Consecutive variable paths are joined by a monochromatic 3-edge spacer of its
own color. With ``alpha = beta = 1/(m+n-1)``, the formula is satisfiable exactly
when the path has a balanced matching of size ``m+n-1``.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .graph import ColoredGraph, FairnessSpec, Matching, is_balanced


class Sat3Error(ValueError):
    pass


class DimacsFormatError(Sat3Error):
    pass


class ClauseSizeError(Sat3Error):
    pass


class DuplicateVariableError(Sat3Error):
    pass


class OccurrenceCountError(Sat3Error):
    pass


class PolarityError(Sat3Error):
    pass


class DecodeError(RuntimeError):
    """A decoded assignment failed to satisfy the formula (an implementation bug)."""


@dataclass(frozen=True)
class Sat3Instance:
    """Clauses are tuples of nonzero DIMACS literals over variables ``1..num_vars``."""

    num_vars: int
    clauses: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "clauses", tuple(tuple(c) for c in self.clauses))
        _validate(self.num_vars, self.clauses)

    @property
    def num_clauses(self) -> int:
        return len(self.clauses)

    def satisfied_by(self, assignment: Sequence[bool]) -> bool:
        """``assignment[i]`` is the value of variable ``i + 1``."""
        return all(any(assignment[abs(x) - 1] == (x > 0) for x in c) for c in self.clauses)

    def to_dimacs(self) -> str:
        lines = [f"p cnf {self.num_vars} {self.num_clauses}"]
        lines.extend(" ".join(map(str, c)) + " 0" for c in self.clauses)
        return "\n".join(lines) + "\n"


def _validate(n: int, clauses: Sequence[Sequence[int]]) -> None:
    if n < 1:
        raise Sat3Error("need at least one variable")
    occurrences = {v: [] for v in range(1, n + 1)}
    for j, clause in enumerate(clauses, start=1):
        if not 2 <= len(clause) <= 3:
            raise ClauseSizeError(f"clause {j} has {len(clause)} literals; need 2 or 3")
        vars_ = [abs(x) for x in clause]
        if len(set(vars_)) != len(vars_):
            raise DuplicateVariableError(f"clause {j} repeats a variable")
        for x in clause:
            if x == 0 or abs(x) > n:
                raise Sat3Error(f"clause {j}: literal {x} outside 1..{n}")
            occurrences[abs(x)].append(x > 0)
    for v, signs in occurrences.items():
        if len(signs) != 3:
            raise OccurrenceCountError(f"variable {v} occurs {len(signs)} times; need 3")
        if all(signs) or not any(signs):
            raise PolarityError(f"variable {v} occurs in only one polarity")


def parse_dimacs_3sat3(text: str) -> Sat3Instance:
    header = None
    literals: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        parts = raw.split()
        if not parts or parts[0] in ("c", "%") or parts[0].startswith("c"):
            continue
        if parts[0] == "p":
            if header is not None or len(parts) != 4 or parts[1] != "cnf":
                raise DimacsFormatError(f"line {lineno}: expected a single 'p cnf <n> <m>'")
            try:
                header = (int(parts[2]), int(parts[3]))
            except ValueError:
                raise DimacsFormatError(f"line {lineno}: header counts must be integers") from None
            continue
        if header is None:
            raise DimacsFormatError(f"line {lineno}: clause before header")
        try:
            literals.extend(int(x) for x in parts)
        except ValueError:
            raise DimacsFormatError(f"line {lineno}: non-integer literal") from None
    if header is None:
        raise DimacsFormatError("missing 'p cnf' header")
    clauses: list[tuple[int, ...]] = []
    current: list[int] = []
    for x in literals:
        if x == 0:
            clauses.append(tuple(current))
            current = []
        else:
            current.append(x)
    if current:
        raise DimacsFormatError("last clause is not terminated by 0")
    n, m = header
    if len(clauses) != m:
        raise DimacsFormatError(f"header declares {m} clauses, found {len(clauses)}")
    return Sat3Instance(n, tuple(clauses))


@dataclass(frozen=True)
class VarGadget:
    """Edges of one variable path: ``edges[j]`` has color ``clauses[j]`` (0-based clause)."""

    edges: tuple[int, int, int]
    clauses: tuple[int, int, int]
    middle_positive: bool


@dataclass(frozen=True)
class ReductionLayout:
    formula: Sat3Instance
    graph: ColoredGraph
    var_gadgets: tuple[VarGadget, ...]
    spacer_gadgets: tuple[tuple[int, int, int], ...]
    spec: FairnessSpec

    def to_json(self) -> dict:
        return {
            "num_vars": self.formula.num_vars,
            "clauses": [list(c) for c in self.formula.clauses],
            "alpha": str(self.spec.alpha),
            "beta": str(self.spec.beta),
            # edge indices and colors are 1-based, as in the .fpm file
            "var_gadgets": [
                {"variable": i + 1,
                 "edges": [e + 1 for e in gd.edges],
                 "colors": [c + 1 for c in gd.clauses],
                 "middle_literal": (i + 1) if gd.middle_positive else -(i + 1)}
                for i, gd in enumerate(self.var_gadgets)],
            "spacer_gadgets": [
                {"between": [i + 1, i + 2],
                 "edges": [e + 1 for e in sp],
                 "color": self.formula.num_clauses + i + 1}
                for i, sp in enumerate(self.spacer_gadgets)],
        }

    @classmethod
    def from_json(cls, data: dict) -> ReductionLayout:
        """Rebuild a layout; the construction is deterministic, so it is re-derived and checked."""
        layout = reduce_to_path(Sat3Instance(data["num_vars"],
                                             tuple(map(tuple, data["clauses"]))))
        if layout.to_json() != data:
            raise ValueError("layout JSON does not match the reduction of its formula")
        return layout


def _ordered_occurrences(f: Sat3Instance) -> list[tuple[list[int], bool]]:
    """Per variable: its three clause indices with the lone-polarity one in the middle."""
    occ: list[list[tuple[int, bool]]] = [[] for _ in range(f.num_vars)]
    for j, clause in enumerate(f.clauses):
        for x in clause:
            occ[abs(x) - 1].append((j, x > 0))
    out = []
    for signs in occ:
        positives = [j for j, s in signs if s]
        negatives = [j for j, s in signs if not s]
        if len(positives) == 2:
            out.append(([positives[0], negatives[0], positives[1]], False))
        else:
            out.append(([negatives[0], positives[0], negatives[1]], True))
    return out


def reduce_to_path(f: Sat3Instance) -> ReductionLayout:
    m, n = f.num_clauses, f.num_vars
    edges: list[tuple[int, int, int]] = []
    var_gadgets = []
    spacers = []
    vertex = 0

    def add_path(colors: Sequence[int]) -> tuple[int, int, int]:
        nonlocal vertex
        idx = []
        for c in colors:
            idx.append(len(edges))
            edges.append((vertex, vertex + 1, c))
            vertex += 1
        return tuple(idx)

    for i, (clauses, middle_positive) in enumerate(_ordered_occurrences(f)):
        var_gadgets.append(VarGadget(add_path(clauses), tuple(clauses), middle_positive))
        if i < n - 1:
            spacers.append(add_path([m + i] * 3))
    ell = m + n - 1
    g = ColoredGraph(vertex + 1, tuple(edges), ell)
    share = Fraction(1, ell)
    return ReductionLayout(f, g, tuple(var_gadgets), tuple(spacers), FairnessSpec(share, share))


def encode_assignment(layout: ReductionLayout, assignment: Sequence[bool]) -> Matching:
    """Balanced matching of size ``m+n-1`` built from a satisfying assignment.

    Each clause takes the edge of its first true literal; each spacer takes
    its middle edge.
    """
    f = layout.formula
    if not f.satisfied_by(assignment):
        raise ValueError("assignment does not satisfy the formula")
    chosen = []
    for j, clause in enumerate(f.clauses):
        x = next(x for x in clause if assignment[abs(x) - 1] == (x > 0))
        gadget = layout.var_gadgets[abs(x) - 1]
        chosen.append(gadget.edges[gadget.clauses.index(j)])
    chosen.extend(sp[1] for sp in layout.spacer_gadgets)
    return Matching.of(layout.graph, chosen)


def decode_assignment(layout: ReductionLayout, m: Matching) -> list[bool]:
    """Truth assignment read off a balanced matching of size ``m+n-1``.

    A variable is set so that its middle literal is true exactly when the
    middle edge is matched.
    """
    f = layout.formula
    if m.size != f.num_clauses + f.num_vars - 1 or not is_balanced(m, layout.graph, layout.spec):
        raise ValueError("decode_assignment needs a balanced matching of size m+n-1")
    assignment = []
    for gadget in layout.var_gadgets:
        middle_in = gadget.edges[1] in m.edge_indices
        assignment.append(gadget.middle_positive if middle_in else not gadget.middle_positive)
    if not f.satisfied_by(assignment):
        raise DecodeError("decoded assignment leaves a clause unsatisfied")
    return assignment


def satisfying_assignment(f: Sat3Instance) -> list[bool] | None:
    """First satisfying assignment in truth-table order, or ``None``."""
    for bits in itertools.product((False, True), repeat=f.num_vars):
        if f.satisfied_by(bits):
            return list(bits)
    return None


def random_sat3(n: int, rng: random.Random, max_tries: int = 1000) -> Sat3Instance:
    """Random 3SAT-3 formula on ``n >= 2`` variables.

    Each variable gets a random majority polarity; the ``3n`` literal
    occurrences are shuffled and cut into clauses of 2 or 3, retrying until no
    clause repeats a variable.
    """
    if n < 2:
        raise ValueError("3SAT-3 needs at least two variables")
    for _ in range(max_tries):
        pool = []
        for v in range(1, n + 1):
            s = rng.choice((1, -1))
            pool += [s * v, s * v, -s * v]
        rng.shuffle(pool)
        clauses = []
        rest = pool
        while rest:
            if len(rest) in (2, 3):
                size = len(rest)
            elif len(rest) == 4:
                size = 2
            else:
                size = rng.choice((2, 3))
            clauses.append(tuple(rest[:size]))
            rest = rest[size:]
        try:
            return Sat3Instance(n, tuple(clauses))
        except DuplicateVariableError:
            continue
    raise RuntimeError(f"no valid formula after {max_tries} tries")


def _canonical(clauses: Sequence[Sequence[int]], n: int) -> tuple[tuple[int, ...], ...]:
    """Smallest clause list over all renamings, with every majority polarity made positive."""
    flips = {}
    for v in range(1, n + 1):
        pos = sum(1 for c in clauses for x in c if x == v)
        flips[v] = 1 if pos == 2 else -1
    best = None
    for perm in itertools.permutations(range(1, n + 1)):
        rename = {v: perm[v - 1] for v in range(1, n + 1)}
        form = tuple(sorted(
            tuple(sorted((flips[abs(x)] * (1 if x > 0 else -1) * rename[abs(x)] for x in c),
                         key=lambda y: (abs(y), y < 0)))
            for c in clauses))
        if best is None or form < best:
            best = form
    return best


def enumerate_sat3(n: int) -> list[Sat3Instance]:
    """Every 3SAT-3 formula on ``n`` variables, one per class under renaming and polarity flips.

    Exhaustive: practical up to ``n = 4``.
    """
    items = [x for v in range(1, n + 1) for x in (v, v, -v)]
    raw: set[tuple[tuple[int, ...], ...]] = set()
    blocks: list[tuple[int, ...]] = []

    def rec(free: tuple[int, ...]) -> None:
        if not free:
            raw.add(tuple(sorted(blocks)))
            return
        first, rest = free[0], free[1:]
        for size in (1, 2):
            for partners in itertools.combinations(range(len(rest)), size):
                lits = [items[first]] + [items[rest[p]] for p in partners]
                if len({abs(x) for x in lits}) != len(lits):
                    continue
                blocks.append(tuple(sorted(lits)))
                rec(tuple(x for p, x in enumerate(rest) if p not in partners))
                blocks.pop()

    rec(tuple(range(len(items))))
    canon = {_canonical(form, n) for form in raw}
    return [Sat3Instance(n, form) for form in sorted(canon)]
