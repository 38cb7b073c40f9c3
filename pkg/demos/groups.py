"""Automorphism groups and weak equivalence."""

from partscat.families import binomial, binomial_is_R_partial
from partscat.gf import tower_field
from partscat.groups import (
    binomial_aut_expected,
    check_expected_group,
    expected_polynomial,
    lz2_aut_expected,
    weak_equiv_family11,
)

F = tower_field(2, 2, 3)
alpha = next(a for a in F.nonzero() if binomial_is_R_partial(F, a, 2, 1, 2)[0])
f = binomial(F, alpha, 2, 1, 2)
print("binomial", f, check_expected_group(f, binomial_aut_expected(2, 2, 3, 2, 1)))

E = tower_field(3, 5, 2)
d = lz2_aut_expected(1, 5, 3)
print("LZ2 over F_3^10:", d.text, check_expected_group(expected_polynomial(d, E), d))

K = tower_field(2, 3, 2)
res = weak_equiv_family11(K, [K.generator, 1], 1, [1, K.exp(10)], 2, 3)
print("weak equivalence s=1, s'=2, t=3:", res.equivalent, "verified:", res.verified)
