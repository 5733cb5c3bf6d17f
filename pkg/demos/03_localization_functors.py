"""The functor cast: reflections onto varieties, nilpotent quotients,
nullifications, quasi-variety reflections, the involution subfunctor --
with locality testing and the idempotency contrast.

Run:  python demos/03_localization_functors.py
"""

from flatlab import (
    Abelianization,
    NilpotentQuotient,
    Nullification,
    SpSubfunctor,
    ab_from_invariants,
    apply,
    cyclic,
    dihedral,
    idempotency_check,
    is_acyclic,
    is_local_wrt,
    standard_quasi_c4_c2,
    symmetric,
)

D8, S3, C4 = dihedral(8), symmetric(3), cyclic(4)

# Epireflections: eta is a surjection with a radical kernel.
L = apply(Abelianization(), D8)
print(f"Abelianization of {D8.name}: order {L.result.order()}, "
      f"radical order {L.radical.order()}")

L = apply(NilpotentQuotient(2), symmetric(4))
print(f"Class-2 nilpotent quotient of S4: order {L.result.order()}")

# Nullification kills everything the target group can reach.
P = apply(Nullification(cyclic(3).presentation), S3)
print(f"Nullifying C3 inside {S3.name} leaves order {P.result.order()}")
print(f"Radical acyclic: {is_acyclic(Nullification(cyclic(3).presentation), P.radical)}")

# The quasi-variety rule: whenever x^4 = 1, impose x^2 = 1.
phi, quasi = standard_quasi_c4_c2()
print(f"Quasi-variety reflection of C4: order {apply(quasi, C4).result.order()}")
print(f"... of C8: order {apply(quasi, cyclic(8)).result.order()}")

# Locality with respect to the projection C4 -> C2.
for X in (ab_from_invariants(1, (), name="Z"),
          ab_from_invariants(1, (2,), name="ZxZ/2"),
          ab_from_invariants(0, (4,), name="Z/4")):
    rep = is_local_wrt(X, phi)
    print(f"{X.name}: {rep.verdict()}  "
          f"(|Hom(C2,X)| = {rep.hom_count_b}, |Hom(C4,X)| = {rep.hom_count_a})")

# Verbal subgroups need not be idempotent; nullification always is.
print(idempotency_check(Abelianization(), D8).detail,
      "-> not idempotent on the dihedral group")
print(idempotency_check(Nullification(cyclic(2).presentation), D8).detail,
      "-> nullification is idempotent")

# The subfunctor of the identity generated by involutions.
print(f"S_2(D8) has order {apply(SpSubfunctor(2), D8).result.order()}; "
      f"S_2(C4) has order {apply(SpSubfunctor(2), C4).result.order()}")
