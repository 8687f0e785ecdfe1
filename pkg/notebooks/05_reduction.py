"""
Why alpha = beta is hard: the 3SAT-3 path
=========================================

A formula where each variable occurs three times (twice in one polarity)
becomes a path: three edges per variable colored by its clauses, joined by
monochromatic spacers. With alpha = beta = 1/(m+n-1), balanced matchings of the
path correspond to satisfying assignments.
"""

from fairmatch import brute_force_opt, decode_assignment, parse_dimacs_3sat3, reduce_to_path
from fairmatch.reduce import enumerate_sat3, satisfying_assignment

f = parse_dimacs_3sat3("p cnf 3 4\n1 2 0\n-1 3 0\n1 -2 -3 0\n2 3 0\n")
lay = reduce_to_path(f)
print(f"{lay.graph.num_edges} edges, {lay.graph.num_colors} colors, alpha = beta = {lay.spec.alpha}")
for i, gd in enumerate(lay.var_gadgets, start=1):
    print(f"x{i}: edges {gd.edges} colored by clauses {gd.clauses}")

res = brute_force_opt(lay.graph, lay.spec, max_edges=None)
print("balanced matching:", res.opt_matching.sorted_indices())
print("decoded assignment:", decode_assignment(lay, res.opt_matching))

# Unsatisfiable 3SAT-3 formulas on four variables, up to symmetry.
for h in enumerate_sat3(4):
    if satisfying_assignment(h) is None:
        r = brute_force_opt(reduce_to_path(h).graph, reduce_to_path(h).spec, max_edges=None)
        print("unsatisfiable:", h.clauses, "-> largest balanced matching:", r.opt_size)
