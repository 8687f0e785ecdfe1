"""
Exact search by color coding
============================

To find a fair matching of exactly k edges, each color gets a block of fresh
colors sized by the fairness bounds, edges are recolored at random inside their
block, and a rainbow matching of size k is sought. Repeating the recoloring
e^k ln(1/eps) times drives the miss probability below eps.
"""

from fractions import Fraction

from fairmatch import ExactQuery, FairnessSpec, exists_fair_of_size
from fairmatch.exact import enumerate_compositions, run_exact, trial_count
from fairmatch.graph import random_graph

print("trials for k=2 at eps=1/1000:", trial_count(2, Fraction(1, 1000)))
spec = FairnessSpec(Fraction(1, 4), Fraction(3, 4))
print("per-color counts for k=4, l=2:", [c.parts for c in enumerate_compositions(4, 2, spec)])

g = random_graph(12, 2, Fraction(1, 2), seed=3)
for k in range(1, 7):
    out = run_exact(g, ExactQuery(k, spec, seed=11))
    truth = exists_fair_of_size(g, spec, k, max_edges=None)
    if out.matching is not None:
        print(f"k={k}: found {out.matching.sorted_indices()} after {out.trials_run} trials "
              f"(counts {out.composition.parts})")
    else:
        why = "proven absent" if out.proven_absent else f"not found in {out.trials_run} trials"
        print(f"k={k}: {why}; oracle says exists={truth}")
