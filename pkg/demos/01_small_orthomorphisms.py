"""
Orthomorphisms of Z/n, three ways
=================================

A permutation sigma of 1..n-1 is an orthomorphism when x -> x (op) sigma(x)
is again a permutation of the nonzero residues.  Here op is +, * or ^.
"""

from orthomorph import OrthoKind, combined_map, is_orthomorphism
from orthomorph.search import Mode, SearchSpec, naive_oracle, search

# the search engine and the brute force oracle agree on small n
for kind in OrthoKind:
    row = []
    for n in range(2, 9):
        res = search(SearchSpec(n, kind))
        assert res.count == naive_oracle(n, kind)
        row.append(f"{n}:{res.count}")
    print(f"{kind.value:>15}  " + "  ".join(row))

# additive ones only show up for odd n
sigma = (2, 4, 1, 3)
print(sigma, combined_map(sigma, OrthoKind.ADDITIVE, 5), is_orthomorphism(sigma, OrthoKind.ADDITIVE, 5))

# the lone multiplicative example lives at n = 2
print(search(SearchSpec(2, OrthoKind.MULTIPLICATIVE, Mode.ENUMERATE_ALL)).certificates)
