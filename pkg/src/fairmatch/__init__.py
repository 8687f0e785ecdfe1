"""Proportionally fair matching on edge-colored graphs."""

__version__ = "0.1.0"

from .graph import (
    ColoredGraph,
    FairnessSpec,
    Feasibility,
    Matching,
    SolveReport,
    feasibility_precheck,
    is_balanced,
    parse_graph,
    serialize_graph,
)
from .rainbow import RainbowQuery, find_rainbow_matching
from .approx import run_round, solve_alpha_positive, solve_beta_limited
from .exact import ExactQuery, solve_exact
from .oracle import brute_force_opt, exists_fair_of_size
from .reduce import (
    Sat3Instance,
    decode_assignment,
    parse_dimacs_3sat3,
    reduce_to_path,
)

__all__ = [
    "ColoredGraph", "FairnessSpec", "Feasibility", "Matching", "SolveReport",
    "feasibility_precheck", "is_balanced", "parse_graph", "serialize_graph",
    "RainbowQuery", "find_rainbow_matching",
    "run_round", "solve_alpha_positive", "solve_beta_limited",
    "ExactQuery", "solve_exact",
    "brute_force_opt", "exists_fair_of_size",
    "Sat3Instance", "decode_assignment", "parse_dimacs_3sat3", "reduce_to_path",
]
