"""Show the pseudoregulus structure of L_f for an R-partial polynomial in PG(3, 4)."""

from partscat.families import family11
from partscat.geometry import graph_subspace, linear_set_points, pseudoregulus_check
from partscat.gf import tower_field

F = tower_field(2, 2, 2)
f = family11(F, [F.generator, 1], 1, 2)  # g x^q + x^(q^3)
print("f =", f)
print("points of L_f:", len(linear_set_points(graph_subspace(f), 2)))
rep = pseudoregulus_check(f, 2)
print("positive:", rep.positive, " m =", rep.m_found, "of", rep.m_expected)
for line in rep.lines:
    print("  line", line.text())
for T in rep.transversals:
    print("  transversal", T.text())
