"""Elementary number theory on desk-scale moduli.

Everything here is deterministic and pure: trial-division factoring,
Euler's totient, gcd rank, primitive roots and discrete logarithms.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd, isqrt, prod


@dataclass(frozen=True)
class FactoredInt:
    """A positive integer together with its prime factorization."""

    value: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.value < 1:
            raise ValueError(f"FactoredInt needs a positive value, got {self.value}")
        primes = [p for p, _ in self.factors]
        if primes != sorted(set(primes)) or any(e < 1 for _, e in self.factors):
            raise ValueError(f"malformed factor list {self.factors}")
        if prod(p**e for p, e in self.factors) != self.value:
            raise ValueError(f"factors {self.factors} do not multiply to {self.value}")

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def as_dict(self) -> dict[int, int]:
        return dict(self.factors)

    def divisors(self) -> list[int]:
        divs = [1]
        for p, e in self.factors:
            divs = [d * p**i for d in divs for i in range(e + 1)]
        return sorted(divs)

    def __int__(self):
        return self.value


@lru_cache(maxsize=4096)
def factorize(m: int) -> FactoredInt:
    """Factor ``m`` by trial division.

    >>> factorize(12).as_dict()
    {2: 2, 3: 1}
    """
    if m < 1:
        raise ValueError(f"cannot factor {m}")
    factors = []
    rest = m
    d = 2
    while d * d <= rest:
        if rest % d == 0:
            e = 0
            while rest % d == 0:
                rest //= d
                e += 1
            factors.append((d, e))
        d += 1 if d == 2 else 2
    if rest > 1:
        factors.append((rest, 1))
    return FactoredInt(m, tuple(factors))


def _as_factored(m) -> FactoredInt:
    return m if isinstance(m, FactoredInt) else factorize(m)


def is_squarefree(m) -> bool:
    return all(e == 1 for _, e in _as_factored(m).factors)


def is_prime(m: int) -> bool:
    return m >= 2 and factorize(m).factors == ((m, 1),)


def rank(x: int, n: int) -> int:
    """gcd(x mod n, n); the zero residue has rank n."""
    return gcd(x % n, n)


def totient(m) -> int:
    f = _as_factored(m)
    return prod((p - 1) * p ** (e - 1) for p, e in f.factors)


def mod_pow(x: int, e: int, n: int) -> int:
    if e < 0:
        raise ValueError("negative exponent")
    # builtin pow is square-and-multiply
    return pow(x, e, n)


def multiplicative_order(g: int, n: int) -> int:
    if gcd(g, n) != 1:
        raise ValueError(f"{g} is not a unit mod {n}")
    order = totient(n)
    for q, _ in factorize(order).factors:
        while order % q == 0 and pow(g, order // q, n) == 1:
            order //= q
    return order


@lru_cache(maxsize=1024)
def primitive_root(p: int) -> int:
    """Smallest generator of (Z/p)^x for a prime ``p``."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if p == 2:
        return 1
    qs = factorize(p - 1).primes
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in qs):
            return g
    raise AssertionError("unreachable: every prime has a primitive root")


@lru_cache(maxsize=256)
def _baby_steps(g: int, p: int) -> tuple[int, dict[int, int]]:
    m = isqrt(p - 1) + 1
    table = {}
    cur = 1
    for j in range(m):
        table.setdefault(cur, j)
        cur = cur * g % p
    return m, table


def dlog(g: int, y: int, p: int) -> int:
    """The exponent t in [0, p-1) with g**t == y (mod p), by baby-step giant-step."""
    y %= p
    if y == 0:
        raise ValueError("zero has no discrete logarithm")
    m, table = _baby_steps(g, p)
    giant = pow(g, -m, p)
    cur = y
    for i in range(m + 1):
        j = table.get(cur)
        if j is not None:
            return (i * m + j) % (p - 1)
        cur = cur * giant % p
    raise ValueError(f"{y} is not a power of {g} mod {p}")
