"""
Splitting G + G into zero-sum halves
====================================

Take two copies of a finite abelian group G.  Count the ways to pick half
the elements of the disjoint union so that the pick sums to zero, and
compare with the exact lower bound 16^N / (4 (N+1)^3).
"""

from orthomorph.abelian import (
    AbelianGroup,
    abelian_groups,
    count_zero_sum_halves,
    decompose_sum,
    split_lower_bound,
)

for N in range(1, 11):
    for G in abelian_groups(N):
        c = count_zero_sum_halves(G)
        b = split_lower_bound(N)
        print(f"{str(G):>12}  halves={c:>8}  bound={float(b):10.2f}")

# any zero-sum function is a sum of two permutations
G = AbelianGroup.parse("2,4")
f = {g: G.zero for g in G.elements}
f[G.elements[1]] = G.elements[3]
f[G.elements[2]] = G.neg(G.elements[3])
pi1, pi2 = decompose_sum(G, f)
for g in G.elements:
    print(g, "->", pi1[g], "+", pi2[g], "=", G.add(pi1[g], pi2[g]))
