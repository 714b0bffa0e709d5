"""Turn an (n, kind) question into independent constraint components.

Pipeline, all of it sound (never removes a solution):

1. build the table of combined values and drop pairs whose value is 0;
2. rank preservation: a multiplicative or exponential orthomorphism keeps
   gcd with n fixed pointwise, and an exponential one also keeps the
   number of distinct powers fixed, because both quantities can only
   grow under the combined map while the image is a rearrangement;
3. merge sigma-values whose columns agree into capacitated classes;
4. matching-based filtering of both all-different constraints until
   nothing changes;
5. split the positions into connected components.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from ..numth import rank
from ..ortho import OrthoKind

ORDERS = ("rank", "natural", "reverse")


def combined_table(n: int, kind: OrthoKind) -> np.ndarray:
    """``t[x, v]`` = combined value of x with sigma(x) = v; row/col 0 unused."""
    r = np.arange(n, dtype=np.int64)
    if kind is OrthoKind.ADDITIVE:
        return (r[:, None] + r[None, :]) % n
    if kind is OrthoKind.MULTIPLICATIVE:
        return (r[:, None] * r[None, :]) % n
    t = np.ones((n, n), dtype=np.int64)
    for e in range(1, n):
        t[:, e] = t[:, e - 1] * r % n
    return t


def power_count(y: int, n: int) -> int:
    """Number of distinct values among y, y^2, y^3, ... mod n."""
    seen = set()
    cur = y % n
    while cur not in seen:
        seen.add(cur)
        cur = cur * y % n
    return len(seen)


def _allowed_pairs(n, kind, table):
    xs = np.arange(1, n)
    vals = np.arange(1, n)
    sub = table[1:, 1:]
    ok = sub != 0
    if kind is OrthoKind.ADDITIVE:
        return ok
    ranks = np.array([0] + [rank(y, n) for y in range(1, n)])
    ok &= ranks[sub] == ranks[xs][:, None]
    if kind is OrthoKind.MULTIPLICATIVE:
        ok &= ranks[vals][None, :] == ranks[xs][:, None]
    else:
        w = np.array([0] + [power_count(y, n) for y in range(1, n)])
        ok &= w[sub] == w[xs][:, None]
    return ok


def _max_matching(adj, cap, n_right):
    """Kuhn's augmenting paths with right-side capacities."""
    holders = [[] for _ in range(n_right)]
    match = [-1] * len(adj)

    def augment(x, seen):
        for r in adj[x]:
            if r in seen:
                continue
            seen.add(r)
            if len(holders[r]) < cap[r]:
                holders[r].append(x)
                match[x] = r
                return True
            for other in holders[r]:
                if augment(other, seen):
                    holders[r].remove(other)
                    holders[r].append(x)
                    match[x] = r
                    return True
        return False

    for x in range(len(adj)):
        if not augment(x, set()):
            return None
    return match


def _usable_edges(adj, cap, n_right):
    """Edges that lie on some perfect matching; None if there is none."""
    P = len(adj)
    if sum(cap) != P:
        return None
    match = _max_matching(adj, cap, n_right)
    if match is None:
        return None
    rows, cols = [], []
    for x, rs in enumerate(adj):
        for r in rs:
            if match[x] == r:
                rows.append(P + r)
                cols.append(x)
            else:
                rows.append(x)
                cols.append(P + r)
    g = csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(P + n_right, P + n_right))
    _, label = connected_components(g, directed=True, connection="strong")
    return [
        {r for r in rs if match[x] == r or label[x] == label[P + r]}
        for x, rs in enumerate(adj)
    ]


def propagate(img: np.ndarray, cap: np.ndarray, n: int) -> np.ndarray | None:
    """Filter ``img`` (positions x classes) to a fixpoint of both all-different
    constraints. Returns the filtered copy, or None when infeasible."""
    img = img.copy()
    P, C = img.shape
    while True:
        dom = [set(np.flatnonzero(row >= 0).tolist()) for row in img]
        keep = _usable_edges(dom, cap.tolist(), C)
        if keep is None:
            return None
        changed = False
        for i in range(P):
            for c in dom[i] - keep[i]:
                img[i, c] = -1
                changed = True
        images = [set(img[i][img[i] >= 0].tolist()) for i in range(P)]
        keep = _usable_edges(images, [0] + [1] * (n - 1), n)
        if keep is None:
            return None
        for i in range(P):
            for y in images[i] - keep[i]:
                img[i, img[i] == y] = -1
                changed = True
        if not changed:
            return img


@dataclass
class Component:
    positions: list[int]
    classes: list[tuple[int, ...]]
    img: np.ndarray
    cap: np.ndarray
    # local class permutations: solution -> solution maps that move the
    # first position's value onto each of its other candidates
    symmetries: list[np.ndarray] = field(default_factory=list)

    @property
    def size(self):
        return len(self.positions)


@dataclass
class Problem:
    n: int
    kind: OrthoKind
    components: list[Component]
    feasible: bool = True


def _position_key(order, n):
    if order == "rank":
        return lambda x: (-rank(x, n), x)
    if order == "natural":
        return lambda x: x
    if order == "reverse":
        return lambda x: -x
    raise ValueError(f"unknown variable order {order!r}; choose from {ORDERS}")


def _components(img):
    P, C = img.shape
    parent = list(range(P))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    by_class, by_image = {}, {}
    for i in range(P):
        for c in np.flatnonzero(img[i] >= 0).tolist():
            for key, table in ((c, by_class), (int(img[i, c]), by_image)):
                j = table.setdefault(key, i)
                parent[find(i)] = find(j)
    groups = {}
    for i in range(P):
        groups.setdefault(find(i), []).append(i)
    return list(groups.values())


def _unit_scalings(comp: Component, n: int) -> list[np.ndarray]:
    """For multiplicative problems, sigma -> u*sigma (u a unit) maps solutions
    to solutions. Keep only scalings that verifiably preserve the component."""
    if comp.size == 0:
        return []
    single = all(len(v) == 1 for v in comp.classes)
    if not single:
        return []
    index = {v[0]: c for c, v in enumerate(comp.classes)}
    root = np.flatnonzero(comp.img[0] >= 0)
    if len(root) < 2:
        return []
    c0 = int(root[0])
    v0 = comp.classes[c0][0]
    perms = []
    for c in root.tolist():
        target = comp.classes[c][0]
        found = None
        for u in range(1, n):
            if gcd(u, n) != 1 or u * v0 % n != target:
                continue
            perm = np.array([index.get(u * v[0] % n, -1) for v in comp.classes])
            if (perm < 0).any() or len(set(perm.tolist())) != len(perm):
                continue
            moved = comp.img[:, perm]
            allowed = comp.img >= 0
            if not np.array_equal(allowed, moved >= 0):
                continue
            if not np.array_equal(np.where(allowed, u * comp.img % n, -1), moved):
                continue
            found = perm
            break
        if found is None:
            return []
        perms.append(found)
    return perms


def build_problem(n: int, kind, order: str = "rank", symmetry: bool = True) -> Problem:
    kind = OrthoKind.parse(kind)
    if n < 2:
        raise ValueError(f"modulus must be at least 2, got {n}")
    key = _position_key(order, n)
    table = combined_table(n, kind)
    ok = _allowed_pairs(n, kind, table)
    sub = np.where(ok, table[1:, 1:], -1)

    signature = {}
    for v in range(1, n):
        signature.setdefault(tuple(sub[:, v - 1].tolist()), []).append(v)
    classes = [tuple(vs) for vs in signature.values()]
    img = np.stack([sub[:, vs[0] - 1] for vs in classes], axis=1)
    cap = np.array([len(vs) for vs in classes], dtype=np.int64)

    img = propagate(img, cap, n)
    if img is None:
        return Problem(n, kind, [], feasible=False)

    comps = []
    for group in _components(img):
        xs = sorted((i + 1 for i in group), key=key)
        rows = [x - 1 for x in xs]
        cls = sorted({c for i in rows for c in np.flatnonzero(img[i] >= 0).tolist()})
        local = img[np.ix_(rows, cls)]
        comp = Component(xs, [classes[c] for c in cls], np.ascontiguousarray(local), cap[cls].copy())
        if symmetry and kind is OrthoKind.MULTIPLICATIVE:
            comp.symmetries = _unit_scalings(comp, n)
        comps.append(comp)
    comps.sort(key=lambda c: (c.size, c.positions[0]))
    return Problem(n, kind, comps)
