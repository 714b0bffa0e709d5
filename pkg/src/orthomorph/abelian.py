"""Finite abelian groups as products of cyclic factors.

Groups are written additively with elements as coordinate tuples. The
module provides the zero-sum halving count for G + G, an enumerator of
the halvings themselves, and a constructive decomposition of a
zero-sum function into a sum of two permutations.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Callable, Hashable, Mapping, Sequence

from .errors import ConsistencyError
from .exact import SqrtRational
from .numth import dlog, factorize, is_squarefree, primitive_root

GroupElt = tuple


def _crt(residues, moduli):
    x, m = 0, 1
    for r, q in zip(residues, moduli):
        # moduli are pairwise coprime by construction
        x += m * ((r - x) * pow(m, -1, q) % q)
        m *= q
    return x % m


class _InvariantFactorMap:
    """Explicit isomorphism Z/m_1 x ... x Z/m_s  ->  Z/r_1 x ... x Z/r_t, r_i | r_{i+1}."""

    def __init__(self, orders: Sequence[int]):
        self.orders = tuple(int(m) for m in orders)
        # slots[i] = prime powers of source factor i
        self.slots = [
            [p**e for p, e in factorize(m).factors] if m > 1 else [] for m in self.orders
        ]
        by_prime = {}
        for i, pps in enumerate(self.slots):
            for j, q in enumerate(pps):
                p = factorize(q).primes[0]
                by_prime.setdefault(p, []).append((q, i, j))
        width = max((len(v) for v in by_prime.values()), default=0)
        # column c collects, for each prime, its c-th largest prime power;
        # column 0 becomes the largest invariant factor
        self.columns = [[] for _ in range(width)]
        for p in sorted(by_prime):
            for c, entry in enumerate(sorted(by_prime[p], reverse=True)):
                self.columns[c].append(entry)
        self.columns.reverse()
        self.factors = tuple(math.prod(q for q, _, _ in col) for col in self.columns)

    def forward(self, coords):
        return tuple(
            _crt([coords[i] % q for q, i, _ in col], [q for q, _, _ in col])
            for col in self.columns
        )

    def backward(self, coords):
        parts = [[0] * len(s) for s in self.slots]
        for value, col in zip(coords, self.columns):
            for q, i, j in col:
                parts[i][j] = value % q
        return tuple(
            _crt(parts[i], self.slots[i]) if self.slots[i] else 0 for i in range(len(self.orders))
        )


@dataclass(frozen=True)
class AbelianGroup:
    """Z/r_1 x ... x Z/r_m with r_1 | r_2 | ... | r_m and every r_i > 1."""

    factor_orders: tuple[int, ...] = ()

    def __post_init__(self):
        orders = tuple(int(r) for r in self.factor_orders)
        object.__setattr__(self, "factor_orders", orders)
        if any(r < 2 for r in orders):
            raise ValueError(f"cyclic factors must have order at least 2: {orders}")
        if any(b % a for a, b in zip(orders, orders[1:])):
            raise ValueError(f"factor orders {orders} do not form a divisibility chain")

    @classmethod
    def from_cyclic(cls, orders: Sequence[int]) -> "AbelianGroup":
        """Normalize any product of cyclic groups to invariant-factor form."""
        return cls(_InvariantFactorMap([m for m in orders if m > 1]).factors)

    @classmethod
    def parse(cls, spec: str) -> "AbelianGroup":
        """'2,6' -> Z/2 x Z/6; '1' or '' -> trivial group."""
        orders = [int(tok) for tok in spec.replace(" ", "").split(",") if tok]
        if any(r < 1 for r in orders):
            raise ValueError(f"bad group spec {spec!r}")
        return cls(tuple(r for r in orders if r > 1))

    @property
    def order(self) -> int:
        return math.prod(self.factor_orders)

    @cached_property
    def elements(self) -> tuple[GroupElt, ...]:
        return tuple(itertools.product(*(range(r) for r in self.factor_orders)))

    @cached_property
    def index(self) -> dict[GroupElt, int]:
        return {g: i for i, g in enumerate(self.elements)}

    @property
    def zero(self) -> GroupElt:
        return (0,) * len(self.factor_orders)

    def add(self, g, h) -> GroupElt:
        return tuple((a + b) % r for a, b, r in zip(g, h, self.factor_orders))

    def neg(self, g) -> GroupElt:
        return tuple(-a % r for a, r in zip(g, self.factor_orders))

    def sub(self, g, h) -> GroupElt:
        return self.add(g, self.neg(h))

    def sum(self, elts) -> GroupElt:
        total = self.zero
        for g in elts:
            total = self.add(total, g)
        return total

    @cached_property
    def add_table(self) -> list[list[int]]:
        idx = self.index
        return [[idx[self.add(g, h)] for h in self.elements] for g in self.elements]

    def __str__(self):
        if not self.factor_orders:
            return "trivial"
        return " x ".join(f"Z/{r}" for r in self.factor_orders)


def abelian_groups(order: int) -> list[AbelianGroup]:
    """Every abelian group of the given order, up to isomorphism."""

    def partitions(e, largest=None):
        largest = e if largest is None else largest
        if e == 0:
            yield ()
            return
        for first in range(min(e, largest), 0, -1):
            for rest in partitions(e - first, first):
                yield (first,) + rest

    per_prime = [
        [[p**a for a in part] for part in partitions(e)] for p, e in factorize(order).factors
    ]
    groups = []
    for combo in itertools.product(*per_prime):
        groups.append(AbelianGroup.from_cyclic([q for part in combo for q in part]))
    return groups


@dataclass(frozen=True)
class UnitGroupIso:
    """(Z/e)^x coordinatized as an additive AbelianGroup."""

    modulus: int
    group: AbelianGroup
    _to: Mapping[int, GroupElt]
    _from: Mapping[GroupElt, int]

    def forward(self, u: int) -> GroupElt:
        return self._to[u % self.modulus]

    def backward(self, g) -> int:
        return self._from[tuple(g)]

    @property
    def units(self) -> list[int]:
        return sorted(self._to)


def unit_group(e: int) -> UnitGroupIso:
    """(Z/e)^x for squarefree e, via CRT and discrete logs to smallest primitive roots."""
    if e < 1 or not is_squarefree(e):
        raise ValueError(f"unit_group needs a squarefree positive modulus, got {e}")
    odd = [q for q in factorize(e).primes if q != 2]
    roots = [primitive_root(q) for q in odd]
    chain = _InvariantFactorMap([q - 1 for q in odd])
    group = AbelianGroup(chain.factors)
    to, back = {}, {}
    for u in range(e):
        if math.gcd(u, e) != 1:
            continue
        raw = tuple(dlog(g, u, q) for g, q in zip(roots, odd))
        g = chain.forward(raw)
        to[u % e] = g
        back[g] = u % e
    if e == 1:
        to, back = {0: ()}, {(): 0}
    if len(to) != group.order:
        raise ConsistencyError(f"unit group of {e} has {len(to)} elements, expected {group.order}")
    return UnitGroupIso(e, group, to, back)


def count_zero_sum_halves(G: AbelianGroup) -> int:
    """Number of |G|-element subsets T of G + G (2|G| labeled elements) with sum 0.

    Dynamic programming over (elements seen, subset size, running sum).
    """
    N = G.order
    table = G.add_table
    # ways[s][h]: subsets of size s with sum index h
    ways = [[0] * N for _ in range(N + 1)]
    ways[0][G.index[G.zero]] = 1
    for g in itertools.chain(range(N), range(N)):
        row = table[g]
        for s in range(N - 1, -1, -1):
            here, there = ways[s], ways[s + 1]
            for h, w in enumerate(here):
                if w:
                    there[row[h]] += w
    return ways[N][G.index[G.zero]]


def split_lower_bound(N: int) -> SqrtRational:
    """4^N / (2 (N+1)^(3/2)), held exactly as the square root of a rational."""
    if N < 1:
        raise ValueError("group order must be positive")
    return SqrtRational(Fraction(16**N, 4 * (N + 1) ** 3))


@dataclass(frozen=True)
class Split:
    left: tuple
    right: tuple


def enumerate_splits(
    G: AbelianGroup, S: Sequence, key: Callable[[Hashable], GroupElt] | None = None
) -> list[Split]:
    """All ordered halvings of the 2|G| labeled items of S with zero-sum halves."""
    key = key or (lambda item: item)
    N = G.order
    if len(S) != 2 * N:
        raise ValueError(f"expected {2 * N} items, got {len(S)}")
    elts = [tuple(key(item)) for item in S]
    if G.sum(elts) != G.zero:
        raise ValueError("the items do not sum to zero")
    splits = []
    for chosen in itertools.combinations(range(2 * N), N):
        if G.sum(elts[i] for i in chosen) != G.zero:
            continue
        picked = set(chosen)
        splits.append(
            Split(
                tuple(S[i] for i in chosen),
                tuple(S[i] for i in range(2 * N) if i not in picked),
            )
        )
    return splits


def _as_table(G: AbelianGroup, f) -> list[int]:
    """Function on G (mapping, callable or sequence in element order) -> index table."""
    idx = G.index
    if isinstance(f, Mapping):
        return [idx[tuple(f[g])] for g in G.elements]
    if callable(f):
        return [idx[tuple(f(g))] for g in G.elements]
    f = list(f)
    if len(f) != G.order:
        raise ValueError(f"expected {G.order} values, got {len(f)}")
    return [idx[tuple(v)] for v in f]


def decompose_sum(G: AbelianGroup, f) -> tuple[dict, dict]:
    """Permutations pi1, pi2 of G with pi1(g) + pi2(g) = f(g) for every g.

    Such a pair exists whenever f sums to zero. Backtracking over pi1 with the
    induced pi2 = f - pi1, always branching on the most constrained element.
    """
    N = G.order
    elts = G.elements
    fi = _as_table(G, f)
    if G.sum(elts[v] for v in fi) != G.zero:
        raise ValueError("f does not sum to zero")
    sub = [[G.index[G.sub(elts[a], elts[b])] for b in range(N)] for a in range(N)]

    pi1 = [-1] * N
    pi2 = [-1] * N
    used1 = [False] * N
    used2 = [False] * N

    def candidates(g):
        row = sub[fi[g]]
        return [a for a in range(N) if not used1[a] and not used2[row[a]]]

    def solve(remaining):
        if not remaining:
            return True
        best, options = None, None
        for g in remaining:
            opts = candidates(g)
            if options is None or len(opts) < len(options):
                best, options = g, opts
                if not opts:
                    return False
        rest = [g for g in remaining if g != best]
        for a in options:
            b = sub[fi[best]][a]
            pi1[best], pi2[best] = a, b
            used1[a] = used2[b] = True
            if solve(rest):
                return True
            used1[a] = used2[b] = False
        pi1[best] = pi2[best] = -1
        return False

    if not solve(list(range(N))):
        raise ConsistencyError(f"no decomposition found for a zero-sum function on {G}")
    one = {elts[g]: elts[pi1[g]] for g in range(N)}
    two = {elts[g]: elts[pi2[g]] for g in range(N)}
    if sorted(pi1) != list(range(N)) or sorted(pi2) != list(range(N)):
        raise ConsistencyError("decomposition is not a pair of permutations")
    for g in elts:
        if G.add(one[g], two[g]) != elts[fi[G.index[g]]]:
            raise ConsistencyError(f"decomposition fails at {g}")
    return one, two


def assign_labels(
    G: AbelianGroup, L: Sequence, key: Callable[[Hashable], GroupElt] | None = None
) -> dict:
    """Arrange the |G| labeled items of L on G so that g + l(g) is a bijection.

    Lay L out as some f : G -> G, split f = pi1 + pi2, and put f(g) at
    -pi2(g); then -pi2(g) + f(g) = pi1(g) runs over G exactly once.
    """
    key = key or (lambda item: item)
    items = list(L)
    if len(items) != G.order:
        raise ValueError(f"expected {G.order} labels, got {len(items)}")
    f = {g: tuple(key(item)) for g, item in zip(G.elements, items)}
    owner = dict(zip(G.elements, items))
    _, pi2 = decompose_sum(G, f)
    labeling = {G.neg(pi2[g]): owner[g] for g in G.elements}
    sums = {G.add(g, tuple(key(item))) for g, item in labeling.items()}
    if len(labeling) != G.order or len(sums) != G.order:
        raise ConsistencyError("label assignment does not give a bijective sum")
    return labeling
