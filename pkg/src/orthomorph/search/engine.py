"""Exhaustive existence / counting / enumeration of orthomorphisms."""
from __future__ import annotations

import enum
import itertools
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from ..ortho import OrthoCertificate, OrthoKind, is_orthomorphism, verify_certificate
from .kernel import dfs_array, dfs_mask
from .problem import Component, build_problem

DEFAULT_NODE_BUDGET = 2_000_000_000
MASK_LIMIT = 64


class Mode(str, enum.Enum):
    EXISTS = "exists"
    COUNT = "count"
    ENUMERATE_ALL = "enumerate"


def default_node_budget() -> int:
    env = os.environ.get("ORTHO_NODE_BUDGET")
    return int(env) if env else DEFAULT_NODE_BUDGET


@dataclass(frozen=True)
class SearchSpec:
    n: int
    kind: OrthoKind
    mode: Mode = Mode.COUNT
    limit: int | None = None
    node_budget: int | None = None
    order: str = "rank"
    threads: int = 1
    forward_check: bool = True
    symmetry: bool = True

    def __post_init__(self):
        object.__setattr__(self, "kind", OrthoKind.parse(self.kind))
        object.__setattr__(self, "mode", Mode(self.mode))
        if self.n < 2:
            raise ValueError(f"modulus must be at least 2, got {self.n}")
        for name in ("limit", "node_budget"):
            value = getattr(self, name)
            if value is not None and value <= 0:
                raise ValueError(f"{name} must be positive, got {value}")
        if self.threads < 1:
            raise ValueError("threads must be at least 1")


@dataclass
class SearchResult:
    spec: SearchSpec
    count: int
    exhausted: bool
    nodes: int
    certificates: list[OrthoCertificate] = field(default_factory=list)

    @property
    def exists(self) -> bool | None:
        if self.count > 0:
            return True
        return False if self.exhausted else None

    @property
    def count_is_exact(self) -> bool:
        return self.exhausted

    def to_record(self) -> dict:
        return {
            "n": self.spec.n,
            "kind": self.spec.kind.value,
            "mode": self.spec.mode.value,
            "count": self.count,
            "count_exact": self.exhausted,
            "exhausted": self.exhausted,
            "nodes": self.nodes,
            "certificates": [c.to_record() for c in self.certificates],
        }


@dataclass
class _Outcome:
    count: int  # canonical solutions, before class and symmetry expansion
    nodes: int
    complete: bool
    solutions: np.ndarray


def _run_component(comp: Component, n, stop_after, max_store, budget, spec) -> _Outcome:
    root_ok = comp.img[0] >= 0 if comp.size else np.zeros(0, bool)
    if comp.symmetries:
        first = int(np.flatnonzero(root_ok)[0])
        root_ok = np.zeros_like(root_ok)
        root_ok[first] = True
    roots = np.flatnonzero(root_ok)
    chunks = [c for c in np.array_split(roots, min(spec.threads, max(1, len(roots)))) if len(c)]
    stop = np.zeros(1, np.int64)

    def work(chunk):
        ok = np.zeros(comp.img.shape[1], np.bool_)
        ok[chunk] = True
        share = max(1, budget // len(chunks))
        args = (comp.img, comp.cap, ok, stop_after, max_store, share, spec.forward_check, stop)
        if n <= MASK_LIMIT:
            return dfs_mask(*args)
        return dfs_array(*args, n)

    if len(chunks) == 1:
        parts = [work(chunks[0])]
    else:
        with ThreadPoolExecutor(len(chunks)) as pool:
            parts = list(pool.map(work, chunks))
    count = sum(int(p[0]) for p in parts)
    nodes = sum(int(p[1]) for p in parts)
    complete = all(bool(p[2]) for p in parts)
    sols = [p[3][: p[4]] for p in parts]
    solutions = np.concatenate(sols) if sols else np.zeros((0, comp.size), np.int64)
    return _Outcome(count, nodes, complete, solutions)


def _multiplier(comp: Component) -> int:
    m = math.prod(math.factorial(int(c)) for c in comp.cap)
    return m * (len(comp.symmetries) if comp.symmetries else 1)


def _expand(comp: Component, solutions):
    """Canonical class assignments -> concrete {x: sigma(x)} maps."""
    for sol in solutions:
        variants = [perm[sol] for perm in comp.symmetries] if comp.symmetries else [sol]
        for choice in variants:
            slots = {}
            for x, c in zip(comp.positions, choice.tolist()):
                slots.setdefault(c, []).append(x)
            per_class = [
                [dict(zip(xs, vals)) for vals in itertools.permutations(comp.classes[c])]
                for c, xs in slots.items()
            ]
            for parts in itertools.product(*per_class):
                merged = {}
                for part in parts:
                    merged.update(part)
                yield merged


def search(spec: SearchSpec) -> SearchResult:
    """Run ``spec`` to completion or until the node budget is spent."""
    n, kind = spec.n, spec.kind
    budget = spec.node_budget or default_node_budget()
    problem = build_problem(n, kind, order=spec.order, symmetry=spec.symmetry)
    if not problem.feasible:
        return SearchResult(spec, 0, True, 0)

    if spec.mode is Mode.EXISTS:
        stop_after, store = 1, 1
    elif spec.mode is Mode.ENUMERATE_ALL:
        stop_after = spec.limit or -1
        store = spec.limit or np.iinfo(np.int64).max
    else:
        stop_after, store = -1, 0

    total, nodes, complete = 1, 0, True
    outcomes = []
    for comp in problem.components:
        out = _run_component(comp, n, stop_after, store, max(1, budget - nodes), spec)
        nodes += out.nodes
        complete &= out.complete
        outcomes.append(out)
        if out.count == 0:
            if out.complete:
                return SearchResult(spec, 0, True, nodes)
            total = 0
            break
        total *= out.count * _multiplier(comp)

    certificates = []
    if spec.mode is not Mode.COUNT and total > 0:
        streams = [list(_expand(c, o.solutions)) for c, o in zip(problem.components, outcomes)]
        cap = 1 if spec.mode is Mode.EXISTS else spec.limit
        for parts in itertools.islice(itertools.product(*streams), cap):
            sigma = {}
            for part in parts:
                sigma.update(part)
            cert = OrthoCertificate.from_sigma([sigma[x] for x in range(1, n)], kind, n)
            if not verify_certificate(cert):
                raise AssertionError(f"search produced an invalid certificate {cert}")
            certificates.append(cert)
        if not complete:
            total = len(certificates)
        elif spec.mode is Mode.ENUMERATE_ALL and spec.limit is None and len(certificates) != total:
            raise AssertionError("expanded certificate count disagrees with the engine count")
    return SearchResult(spec, total, complete, nodes, certificates)


def existence_table(kind, n_max: int, n_min: int = 2, node_budget: int | None = None, **options):
    """[(n, True | False | None)] where None marks budget exhaustion."""
    if n_max < 2:
        raise ValueError("n_max must be at least 2")
    rows = []
    for n in range(max(2, n_min), n_max + 1):
        res = search(SearchSpec(n, kind, Mode.EXISTS, node_budget=node_budget, **options))
        rows.append((n, res.exists))
    return rows


def naive_oracle(n: int, kind) -> int:
    """Count by filtering all (n-1)! permutations; shares nothing with ``search``."""
    if n > 9:
        raise ValueError(f"naive oracle is limited to n <= 9, got {n}")
    if n < 2:
        raise ValueError(f"modulus must be at least 2, got {n}")
    kind = OrthoKind.parse(kind)
    return sum(
        1 for perm in itertools.permutations(range(1, n)) if is_orthomorphism(perm, kind, n)
    )
