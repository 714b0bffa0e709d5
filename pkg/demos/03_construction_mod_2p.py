"""
Building exponential orthomorphisms mod 2p
==========================================

For n = 2p with p prime and 3 a primitive root of p, a walk on the divisor
poset of p - 1 hands out unit labels.  Together with zero-sum splittings of
the unit groups, these give explicit sigma.  The lower bound below comes
from counting those choices.
"""

from orthomorph import OrthoKind, verify_certificate
from orthomorph import construct
from orthomorph.search import Mode, SearchSpec, search

n = 14
cert = construct.construct_one(n)
print("one sigma mod 14:", cert.sigma)
print("image          :", cert.image, verify_certificate(cert))

bound = construct.theorem3_bound(n)
built = construct.generate_all(n)
print("bound:", bound, " constructed:", len(built))

full = search(SearchSpec(n, OrthoKind.EXPONENTIAL, Mode.COUNT))
print("exhaustive count:", full.count)

# how many walks, and how many different labelings they finish in
walks = construct.enumerate_walks(n)
finals = {construct.run_walk(construct.build_poset(n), w).configuration() for w in walks}
print(f"{len(walks)} walks, {len(finals)} distinct final labelings")
