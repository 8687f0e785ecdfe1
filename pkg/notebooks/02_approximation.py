"""
Approximating the largest fair matching (alpha > 0)
===================================================

The solver guesses the optimum size T, builds a candidate from a rainbow
matching plus greedy color rounds, and keeps candidates that meet the bounds
relaxed by 1 + 4l/T. We compare against the exhaustive oracle.
"""

from fractions import Fraction

import numpy as np

from fairmatch import FairnessSpec, brute_force_opt, solve_alpha_positive
from fairmatch.graph import random_graph

spec = FairnessSpec(Fraction(1, 4), Fraction(1, 2))
ratios = []
for seed in range(40):
    g = random_graph(14, 2, Fraction(3, 5), seed)
    opt = brute_force_opt(g, spec, max_edges=None).opt_size
    rep = solve_alpha_positive(g, spec)
    if opt == 0:
        assert rep is None
        continue
    ratios.append(rep.size / opt)
    if seed < 3:
        print(f"seed {seed}: opt {opt}, found {rep.size} at T={rep.probed_T}, "
              f"shares {[str(f) for f in rep.fractions]}, "
              f"certified [{rep.certified_lower}, {rep.certified_upper}]")

ratios = np.array(ratios)
print(f"{ratios.size} feasible instances, size/opt: min {ratios.min():.2f}, mean {ratios.mean():.2f}")

# On graphs this small every guess T is at most 4l^2, so the answer is the
# rainbow matching itself: exactly one edge per color.
