"""
The beta-limited case (alpha = 0)
=================================

With only an upper bound on each color share the problem stays polynomial:
greedy rounds with a per-color cap, no rainbow search. The guarantee claimed
for this solver does not hold on every instance; the example below shows
where it breaks.
"""

from fractions import Fraction

from fairmatch import FairnessSpec, brute_force_opt, solve_beta_limited
from fairmatch.approx import probe_beta_limited
from fairmatch.graph import ColoredGraph

# Six disjoint edges, three of each color. With beta = 1/2 the optimum uses
# all six edges, three per color.
g = ColoredGraph(12, [(2 * i, 2 * i + 1, c) for i, c in enumerate([0, 0, 0, 1, 1, 1])], 2)
spec = FairnessSpec(0, Fraction(1, 2))
opt = brute_force_opt(g, spec, max_edges=None).opt_size
print("optimum:", opt)

for p in probe_beta_limited(g, spec):
    shown = "empty" if p.report is None else f"size {p.report.size}, max share {max(p.report.fractions)}"
    print(f"T={p.T}: {shown}, {'discarded' if p.discarded else 'kept'}")

rep = solve_beta_limited(g, spec)
bound = spec.beta * (1 + Fraction(2 * g.num_colors, opt))
print(f"returned size {rep.size}, max share {max(rep.fractions)}, share bound at OPT: {bound}")
# Small guesses T <= 2l return a single edge, whose share is 1. That exceeds
# beta * (1 + 2l/OPT) whenever beta < 1/2 or OPT > 2l, so the share bound fails.
