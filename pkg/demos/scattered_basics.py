"""Decide L-, R- and full scatteredness of a few polynomials over F_16."""

from partscat.families import binomial, binomial_is_R_partial
from partscat.gf import format_element, tower_field
from partscat.linpoly import LinPoly
from partscat.scatter import criterion, oracle

F = tower_field(2, 2, 2)  # F_16 as a degree-2 extension of F_4

examples = {
    "x^q": LinPoly.monomial(F, 1),
    "x": LinPoly.identity(F),
    "x^(q^2)": LinPoly.monomial(F, 2),
}
for name, f in examples.items():
    for prop, t in (("scattered", 1), ("L-partial", 2), ("R-partial", 2)):
        rep = oracle(f, prop, t)
        wit = "" if rep.holds else " witness " + ",".join(format_element(F, w) for w in rep.witness)
        print(f"{name:8s} {prop:10s} t={t}: {rep.holds}{wit}")

hits = 0
for alpha in F.nonzero():
    f = binomial(F, alpha, 1, 1, 2)
    ok, _ = binomial_is_R_partial(F, alpha, 1, 1, 2)
    assert ok == criterion(f, "R", 2).holds
    hits += ok
print(f"x^(q^3) + alpha x^q is R-partial for {hits} of 15 alpha")
