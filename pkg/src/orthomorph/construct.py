"""Constructing exponential orthomorphisms modulo n = 2p.

Here p is an odd prime and p - 1 = 2 q_1 ... q_k is squarefree. The
labels 1, ..., n-1 are placed on the divisor lattice of p - 1 by their
gcd with p - 1; one chain of the lattice is then walked bottom to top,
each step moving a label that is 1 modulo (p-1)/d up to the next node
and the last one out to the special element p. At every node the labels
are halved between the even and odd residues (both halves with trivial
product in the unit group) and laid out so that exponentiation is
bijective.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .abelian import Split, assign_labels, enumerate_splits, unit_group
from .errors import ConsistencyError
from .exact import SqrtRational
from .numth import FactoredInt, dlog, factorize, is_prime, is_squarefree, primitive_root, totient
from .ortho import OrthoCertificate, OrthoKind, check_certificate, is_orthomorphism


def admissible_prime(n: int) -> int:
    """p for n = 2p with p an odd prime and p - 1 squarefree; ValueError otherwise."""
    if n % 2 or n < 6 or not is_prime(n // 2):
        raise ValueError(f"n={n} is not twice an odd prime")
    p = n // 2
    if not is_squarefree(p - 1):
        raise ValueError(f"n={n}: p-1={p - 1} is not squarefree")
    return p


@dataclass(frozen=True)
class DivisorPoset:
    n: int
    p: int
    pm1: FactoredInt
    nodes: tuple[int, ...]

    @property
    def k(self) -> int:
        return len(self.pm1.factors) - 1

    @property
    def top(self) -> int:
        return self.p - 1

    def covers(self, d: int) -> list[int]:
        """Nodes immediately above d."""
        return [d * q for q in self.pm1.primes if (self.top // d) % q == 0]

    def chains(self) -> list[tuple[int, ...]]:
        """Maximal chains 1 < ... < p-1, in lexicographic order of the added primes."""
        chains = []
        for order in itertools.permutations(self.pm1.primes):
            d, chain = 1, [1]
            for q in order:
                d *= q
                chain.append(d)
            chains.append(tuple(chain))
        return sorted(chains)


@dataclass
class LabeledPoset:
    poset: DivisorPoset
    labels: dict[int, list[int]]
    leftover: int | None = None

    def copy(self) -> "LabeledPoset":
        return LabeledPoset(self.poset, {d: list(v) for d, v in self.labels.items()}, self.leftover)

    def configuration(self):
        """Hashable snapshot of the labeling."""
        return tuple((d, tuple(sorted(self.labels[d]))) for d in self.poset.nodes), self.leftover

    def eligible(self, d: int) -> list[int]:
        e = self.poset.top // d
        return sorted(x for x in self.labels[d] if x % e == 1 % e)


@dataclass(frozen=True)
class WalkChoice:
    chain: tuple[int, ...]
    picks: tuple[int, ...]


def build_poset(n: int) -> LabeledPoset:
    p = admissible_prime(n)
    pm1 = factorize(p - 1)
    poset = DivisorPoset(n, p, pm1, tuple(pm1.divisors()))
    labels = {d: [] for d in poset.nodes}
    for x in range(1, n):
        labels[math.gcd(x, p - 1)].append(x)
    for d in poset.nodes:
        want = 2 * totient((p - 1) // d) + (d == 1)
        if len(labels[d]) != want:
            raise ConsistencyError(f"node {d} holds {len(labels[d])} labels, expected {want}")
    return LabeledPoset(poset, labels)


def run_walk(initial: LabeledPoset, choice: WalkChoice) -> LabeledPoset:
    """Apply one walk to a copy of ``initial``."""
    poset = initial.poset
    chain = choice.chain
    if chain[0] != 1 or chain[-1] != poset.top or len(choice.picks) != len(chain):
        raise ValueError(f"malformed walk {choice}")
    for lo, hi in zip(chain, chain[1:]):
        if hi not in poset.covers(lo):
            raise ValueError(f"{hi} does not cover {lo} in the divisor lattice")
    state = initial.copy()
    for i, (d, x) in enumerate(zip(chain, choice.picks)):
        eligible = state.eligible(d)
        if len(eligible) != 3:
            raise ConsistencyError(f"node {d} has {len(eligible)} labels that are 1 mod {poset.top // d}")
        if x not in eligible:
            raise ValueError(f"label {x} is not eligible at node {d} (eligible: {eligible})")
        state.labels[d].remove(x)
        if d == poset.top:
            state.leftover = x
        else:
            state.labels[chain[i + 1]].append(x)
    return state


def enumerate_walks(n: int, initial: LabeledPoset | None = None) -> list[WalkChoice]:
    initial = initial or build_poset(n)
    walks = []

    def extend(state, chain, picks, i):
        d = chain[i]
        for x in state.eligible(d):
            nxt = state.copy()
            nxt.labels[d].remove(x)
            if i + 1 == len(chain):
                walks.append(WalkChoice(chain, picks + (x,)))
            else:
                nxt.labels[chain[i + 1]].append(x)
                extend(nxt, chain, picks + (x,), i + 1)

    for chain in initial.poset.chains():
        extend(initial, chain, (), 0)
    return walks


def walk_counts(n: int) -> dict:
    """Number of walks by enumeration alongside both closed forms."""
    p = admissible_prime(n)
    k = len(factorize(p - 1).factors) - 1
    return {
        "enumerated": len(enumerate_walks(n)),
        "proof_form": 3 ** (k + 2) * math.factorial(k + 1),
        "theorem_form": math.factorial(k + 2) * 3 ** (k + 1),
    }


@dataclass(frozen=True)
class Element:
    """A residue x != p of Z/2p in exponent coordinates."""

    x: int
    parity: str  # "E" or "O"
    log: int  # discrete log of x mod p


def classify_elements(n: int) -> dict[int, dict[str, list[Element]]]:
    """Group the residues other than p by gcd(log, p-1) and by parity."""
    p = admissible_prime(n)
    g = primitive_root(p)
    nodes = {d: {"E": [], "O": []} for d in factorize(p - 1).divisors()}
    for x in range(1, n):
        if x == p:
            continue
        t = dlog(g, x % p, p)
        d = math.gcd(t, p - 1)
        nodes[d]["E" if x % 2 == 0 else "O"].append(Element(x, "E" if x % 2 == 0 else "O", t))
    return nodes


def node_splits(final: LabeledPoset, d: int) -> list[Split]:
    """Ordered (even-side, odd-side) halvings of the labels at node d."""
    e = final.poset.top // d
    iso = unit_group(e)
    return enumerate_splits(iso.group, final.labels[d], key=iso.forward)


def realize_sigma(final: LabeledPoset, splits: dict[int, Split], assignments: dict | None = None) -> OrthoCertificate:
    """Turn a completed walk plus one split per node into an exponential orthomorphism.

    ``assignments`` maps (d, "E" | "O") to {element x: label}; missing entries
    are filled by ``assign_labels``.
    """
    poset = final.poset
    if final.leftover is None:
        raise ValueError("the walk has not been completed")
    n, p = poset.n, poset.p
    elements = classify_elements(n)
    assignments = dict(assignments or {})
    sigma = {p: final.leftover}
    for d in poset.nodes:
        e = poset.top // d
        iso = unit_group(e)
        split = splits[d]
        for side, labels in (("E", split.left), ("O", split.right)):
            elts = elements[d][side]
            if (d, side) not in assignments:
                # element with log t = d*u sits at coordinate forward(u)
                placed = assign_labels(iso.group, labels, key=iso.forward)
                where = {iso.forward(el.log // d): el.x for el in elts}
                assignments[(d, side)] = {where[g]: label for g, label in placed.items()}
            for x, label in assignments[(d, side)].items():
                sigma[x] = label
    cert = OrthoCertificate.from_sigma([sigma[x] for x in range(1, n)], OrthoKind.EXPONENTIAL, n)
    problem = check_certificate(cert)
    if problem is not None:
        raise ConsistencyError(f"constructed sigma is not an exponential orthomorphism: {problem}")
    return cert


def construct_one(n: int) -> OrthoCertificate:
    initial = build_poset(n)
    final = run_walk(initial, enumerate_walks(n, initial)[0])
    return realize_sigma(final, {d: node_splits(final, d)[0] for d in final.poset.nodes})


def generate_all(n: int, dedupe: bool = True):
    """Every certificate reachable from (walk, per-node split) choices,
    with one canonical label assignment per split."""
    initial = build_poset(n)
    out = []
    seen = set()
    for walk in enumerate_walks(n, initial):
        final = run_walk(initial, walk)
        nodes = final.poset.nodes
        for combo in itertools.product(*(node_splits(final, d) for d in nodes)):
            cert = realize_sigma(final, dict(zip(nodes, combo)))
            if dedupe:
                if cert.sigma in seen:
                    continue
                seen.add(cert.sigma)
            out.append(cert)
    return out


def construction_size(n: int) -> int:
    """Sum over walks of the product of per-node split counts."""
    initial = build_poset(n)
    total = 0
    for walk in enumerate_walks(n, initial):
        final = run_walk(initial, walk)
        total += math.prod(len(node_splits(final, d)) for d in final.poset.nodes)
    return total


def theorem3_bound(n: int) -> SqrtRational:
    """(k+2)! 3^(k+1) 2^(n - 2^(k-1)) / (4 (n-2)^(3 2^(k-1))), exactly.

    For k = 0 the exponents are half-integers and the value is irrational.
    """
    p = admissible_prime(n)
    k = len(factorize(p - 1).factors) - 1
    # square of the bound, so that 2^(k-1) is always an integer power once doubled
    half = Fraction(2) ** (k - 1)
    two_exp = 2 * (n - half)
    base_exp = 2 * 3 * half
    if two_exp.denominator != 1 or base_exp.denominator != 1:
        raise AssertionError("exponents of the squared bound must be integral")
    coeff = math.factorial(k + 2) * 3 ** (k + 1)
    square = Fraction(coeff**2 * 2 ** int(two_exp), 16 * (n - 2) ** int(base_exp))
    return SqrtRational(square)


def theorem3_terms(n: int) -> tuple[int, int]:
    """Unreduced numerator and denominator of the bound; needs k >= 1."""
    p = admissible_prime(n)
    k = len(factorize(p - 1).factors) - 1
    if k < 1:
        raise ValueError(f"n={n} has k=0; the bound has half-integer exponents there")
    half = 2 ** (k - 1)
    num = math.factorial(k + 2) * 3 ** (k + 1) * 2 ** (n - half)
    return num, 4 * (n - 2) ** (3 * half)


def theorem3_product_form(n: int) -> SqrtRational:
    """(k+2)! 3^(k+1) times the product over e | p-1 of 4^phi(e) / (2 e^(3/2))."""
    p = admissible_prime(n)
    f = factorize(p - 1)
    k = len(f.factors) - 1
    value = SqrtRational.of(math.factorial(k + 2) * 3 ** (k + 1))
    for e in f.divisors():
        value = value * SqrtRational(Fraction(16 ** totient(e), 4 * e**3))
    return value


def prime_reduction(n: int) -> dict:
    """Relate exponential orthomorphisms mod a prime n to multiplicative ones mod n-1.

    sigma |-> tau with tau(log x) = sigma(x) mod (n-1); sigma(1) must be n-1.
    """
    from .search import Mode, SearchSpec, search

    if not is_prime(n) or n < 3:
        raise ValueError(f"{n} is not an odd prime")
    m = n - 1
    g = primitive_root(n)
    exp = search(SearchSpec(n, OrthoKind.EXPONENTIAL, Mode.ENUMERATE_ALL))
    mul = search(SearchSpec(m, OrthoKind.MULTIPLICATIVE, Mode.ENUMERATE_ALL))

    def down(sigma):
        if sigma[0] != m:
            raise ConsistencyError(f"exponential orthomorphism mod {n} with sigma(1) != {m}")
        tau = [0] * (m - 1)
        for x in range(2, n):
            tau[dlog(g, x, n) - 1] = sigma[x - 1] % m
        return tuple(tau)

    def up(tau):
        sigma = [m] + [0] * (m - 1)
        for x in range(2, n):
            sigma[x - 1] = tau[dlog(g, x, n) - 1]
        return tuple(sigma)

    exp_set = {c.sigma for c in exp.certificates}
    mul_set = {c.sigma for c in mul.certificates}
    images = {down(s) for s in exp_set}
    back = {up(t) for t in mul_set}
    forward_ok = images == mul_set and all(is_orthomorphism(t, OrthoKind.MULTIPLICATIVE, m) for t in images)
    backward_ok = back == exp_set and all(is_orthomorphism(s, OrthoKind.EXPONENTIAL, n) for s in back)
    return {
        "n": n,
        "exponential_count": exp.count,
        "multiplicative_count": mul.count,
        "exhausted": exp.exhausted and mul.exhausted,
        "forward_ok": forward_ok,
        "backward_ok": backward_ok,
        "pairs": sorted((s, down(s)) for s in exp_set),
    }


def _residue(v: int, m: int) -> int:
    """Representative in 1..m of v mod m."""
    return (v - 1) % m + 1


def value_multiset(p: int) -> dict[int, int]:
    """Residues of 1..2p-1 mod p-1 (as 1..p-1) with multiplicities."""
    counts = {}
    for v in range(1, 2 * p):
        r = _residue(v, p - 1)
        counts[r] = counts.get(r, 0) + 1
    return counts


@dataclass(frozen=True)
class Reformulation:
    """sigma mod p-1 on odd residues (a) and even residues (b), indexed by the
    discrete log of the element, plus c = sigma(p)."""

    p: int
    a: tuple[int, ...]
    b: tuple[int, ...]
    c: int

    def is_valid(self) -> bool:
        m = self.p - 1
        return all(sorted(t * v % m for t, v in enumerate(arr)) == list(range(m)) for arr in (self.a, self.b))

    def positional(self) -> tuple[tuple[int, ...], tuple[int, ...], int]:
        """a, b re-indexed by position: a_k = sigma(2k-1) for k <= (p-1)/2, sigma(2k+1) after;
        b_k = sigma(2k)."""
        p, g = self.p, primitive_root(self.p)
        odd = [2 * k - 1 if k <= (p - 1) // 2 else 2 * k + 1 for k in range(1, p)]
        even = [2 * k for k in range(1, p)]
        a = tuple(self.a[dlog(g, x % p, p)] for x in odd)
        b = tuple(self.b[dlog(g, x % p, p)] for x in even)
        return a, b, self.c


def reformulate(n: int, sigma) -> Reformulation:
    if n % 2 or not is_prime(n // 2) or n < 6:
        raise ValueError(f"n={n} is not twice an odd prime")
    p = n // 2
    sigma = tuple(sigma)
    g = primitive_root(p)
    a = [0] * (p - 1)
    b = [0] * (p - 1)
    for x in range(1, n):
        if x == p:
            continue
        target = b if x % 2 == 0 else a
        target[dlog(g, x % p, p)] = _residue(sigma[x - 1], p - 1)
    return Reformulation(p, tuple(a), tuple(b), _residue(sigma[p - 1], p - 1))


def lift(ref: Reformulation) -> tuple[int, ...]:
    """One sigma with the given reformulation: each residue class hands out its
    integers in increasing order of the element that receives them."""
    p = ref.p
    n = 2 * p
    g = primitive_root(p)
    pool = {}
    for v in range(1, n):
        pool.setdefault(_residue(v, p - 1), []).append(v)
    wanted = {}
    for x in range(1, n):
        if x == p:
            wanted[x] = ref.c
        else:
            arr = ref.b if x % 2 == 0 else ref.a
            wanted[x] = arr[dlog(g, x % p, p)]
    sigma = []
    for x in range(1, n):
        bucket = pool[wanted[x]]
        if not bucket:
            raise ValueError("reformulation does not use the value multiset exactly")
        sigma.append(bucket.pop(0))
    return tuple(sigma)


def _exponent_arrays(m: int) -> list[tuple[int, ...]]:
    """All arrays a over Z/m (values as 1..m) with t -> t*a[t] a permutation of Z/m."""
    out = []
    arr = [0] * m
    used = [False] * m

    def go(t):
        if t == m:
            out.append(tuple(arr))
            return
        for v in range(1, m + 1):
            y = t * v % m
            if not used[y]:
                used[y] = True
                arr[t] = v
                go(t + 1)
                used[y] = False

    go(0)
    return out


def count_via_reformulation(n: int) -> int:
    """Count exponential orthomorphisms mod 2p by searching (a, b, c) directly."""
    p = n // 2
    if n % 2 or not is_prime(p) or p < 3:
        raise ValueError(f"n={n} is not twice an odd prime")
    m = p - 1
    mult = value_multiset(p)
    arrays = _exponent_arrays(m)
    usage = {}
    for arr in arrays:
        key = tuple(sum(1 for v in arr if v == r) for r in range(1, m + 1))
        usage[key] = usage.get(key, 0) + 1
    cap = tuple(mult[r] for r in range(1, m + 1))
    sequences = 0
    for ka, na in usage.items():
        for kb, nb in usage.items():
            rest = [c - x - y for c, x, y in zip(cap, ka, kb)]
            if min(rest) >= 0:
                # exactly one value is left over for c
                sequences += na * nb
    lifts = math.prod(math.factorial(c) for c in cap)
    return sequences * lifts
