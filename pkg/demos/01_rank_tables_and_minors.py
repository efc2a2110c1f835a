"""Build matroids as rank tables and take them apart again.

A matroid on n elements lives here as the full table of its 2^n subset
ranks, so every derived object (minor, dual, sum) is a table transform
that can be checked against the rank axioms after the fact.
"""

from matroid_depth.core import (
    contract,
    delete,
    direct_sum,
    dual,
    fano,
    named,
    uniform,
)

u24 = uniform(2, 4)
print("U_{2,4}:", u24)
print("rank of {0,1}:", u24.rank(0b0011))
print("rank of everything:", u24.rank())

# one-element operations shrink the ground set and relabel past the gap
print("\ndelete element 3:", delete(u24, 0b1000))
print("contract element 0:", contract(u24, 0b0001))

# duality swaps the roles of deletion and contraction
d = dual(u24)
print("\ndual of U_{2,4} is U_{2,4} again:", d == u24)
print("dual of U_{1,3}:", dual(uniform(1, 3)))

f = fano()
f.validate()
print("\nFano plane:", f, "rank", f.rank())
print("every 3 of its 7 points:", [f.rank(0b0000111), f.rank(0b0001011)])

s = direct_sum(uniform(1, 2), named("U23"))
print("\nU_{1,2} + U_{2,3}:", s)
s.validate()
print("components stay independent: rank =", s.rank(), "= 1 + 2")
