"""
Colored graphs and balanced matchings
=====================================

A matching is (alpha, beta)-balanced when every color's share of its edges
lies between alpha and beta. Shares are exact fractions throughout.
"""

from fractions import Fraction

from fairmatch import (ColoredGraph, FairnessSpec, Matching, feasibility_precheck,
                       is_balanced, parse_graph, serialize_graph)

# A 6-cycle whose edges alternate between two colors (0-based inside Python).
g = ColoredGraph(6, [(0, 1, 0), (1, 2, 1), (2, 3, 0), (3, 4, 1), (4, 5, 0), (5, 0, 1)], 2)

# Edges 0 and 3 are disjoint and use one edge of each color.
m = Matching.of(g, [0, 3])
print("shares:", m.fractions())
print("balanced at (1/2, 1/2)?", is_balanced(m, g, FairnessSpec(Fraction(1, 2), Fraction(1, 2))))

# A perfect matching of the cycle is monochromatic.
perfect = Matching.of(g, [0, 2, 4])
print("perfect matching shares:", perfect.fractions())
print("balanced at (0, 1/2)?", is_balanced(perfect, g, FairnessSpec(0, Fraction(1, 2))))

# A cheap precheck: some color always has share at least 1/l and some color
# at most 1/l, so alpha > 1/l or beta < 1/l rules out every nonempty matching.
for spec in [FairnessSpec(Fraction(1, 2), 1), FairnessSpec(0, Fraction(1, 3))]:
    print(spec, "->", feasibility_precheck(g, spec).value)

# The text format is 1-based and round-trips exactly.
text = serialize_graph(g)
print(text)
assert parse_graph(text) == g
