"""
Exponential mod p versus multiplicative mod p - 1
=================================================

Taking discrete logs turns an exponential orthomorphism modulo a prime p
into a multiplicative one modulo p - 1, and back.  The counts match.
"""

from orthomorph import construct

for p in (3, 5, 7, 11, 13):
    r = construct.prime_reduction(p)
    print(p, r["exponential_count"], r["multiplicative_count"], r["forward_ok"], r["backward_ok"])

print(construct.prime_reduction(3)["pairs"])
