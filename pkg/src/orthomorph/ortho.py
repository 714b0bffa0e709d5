"""Permutations of {1, ..., n-1} and the three orthomorphism predicates.

Permutations use the canonical convention: the domain is the nonzero
residues, and ``sigma[x - 1]`` holds sigma(x).
"""
from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence


class OrthoKind(str, enum.Enum):
    ADDITIVE = "additive"
    MULTIPLICATIVE = "multiplicative"
    EXPONENTIAL = "exponential"

    @classmethod
    def parse(cls, value) -> "OrthoKind":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise ValueError(f"unknown orthomorphism kind {value!r}") from None

    def combine(self, x: int, s: int, n: int) -> int:
        if self is OrthoKind.ADDITIVE:
            return (x + s) % n
        if self is OrthoKind.MULTIPLICATIVE:
            return x * s % n
        return pow(x, s, n)


@dataclass(frozen=True)
class Permutation:
    """A map on {1, ..., n-1}; bijectivity is checked on demand, not enforced."""

    n: int
    map: tuple[int, ...]

    def __post_init__(self):
        if self.n < 2:
            raise ValueError(f"modulus must be at least 2, got {self.n}")
        object.__setattr__(self, "map", tuple(int(v) for v in self.map))
        if len(self.map) != self.n - 1:
            raise ValueError(f"expected {self.n - 1} entries for n={self.n}, got {len(self.map)}")

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(n, tuple(range(1, n)))

    def __call__(self, x: int) -> int:
        return self.map[x - 1]

    def __iter__(self):
        return iter(self.map)

    def __len__(self):
        return len(self.map)

    def is_bijection(self) -> bool:
        return sorted(self.map) == list(range(1, self.n))


def _as_permutation(sigma, n: int | None) -> Permutation:
    if isinstance(sigma, Permutation):
        if n is not None and n != sigma.n:
            raise ValueError(f"permutation is for n={sigma.n}, not n={n}")
        return sigma
    sigma = tuple(sigma)
    return Permutation(len(sigma) + 1 if n is None else n, sigma)


def combined_map(sigma, kind, n: int | None = None) -> tuple[int, ...]:
    """x + sigma(x), x * sigma(x) or x ** sigma(x) mod n, for x = 1..n-1.

    Exponents are used as written; nothing is reduced modulo an order.
    """
    sigma = _as_permutation(sigma, n)
    kind = OrthoKind.parse(kind)
    return tuple(kind.combine(x, s, sigma.n) for x, s in zip(range(1, sigma.n), sigma.map))


def _is_bijection_of_nonzero(values: Sequence[int], n: int) -> bool:
    return sorted(values) == list(range(1, n))


def is_orthomorphism(sigma, kind, n: int | None = None) -> bool:
    sigma = _as_permutation(sigma, n)
    if not sigma.is_bijection():
        return False
    return _is_bijection_of_nonzero(combined_map(sigma, kind), sigma.n)


@dataclass(frozen=True)
class OrthoCertificate:
    n: int
    kind: OrthoKind
    sigma: tuple[int, ...]
    image: tuple[int, ...]

    @classmethod
    def from_sigma(cls, sigma, kind, n: int | None = None) -> "OrthoCertificate":
        sigma = _as_permutation(sigma, n)
        kind = OrthoKind.parse(kind)
        return cls(sigma.n, kind, sigma.map, combined_map(sigma, kind))

    def to_record(self) -> dict:
        return {
            "n": self.n,
            "kind": self.kind.value,
            "sigma": list(self.sigma),
            "image": list(self.image),
        }

    @classmethod
    def from_record(cls, record: dict) -> "OrthoCertificate":
        return cls(
            int(record["n"]),
            OrthoKind.parse(record["kind"]),
            tuple(int(v) for v in record["sigma"]),
            tuple(int(v) for v in record["image"]),
        )

    def to_json(self) -> str:
        return json.dumps(self.to_record(), separators=(",", ":"))

    @classmethod
    def from_json(cls, line: str) -> "OrthoCertificate":
        return cls.from_record(json.loads(line))


class Violation(NamedTuple):
    index: int | None  # 1-based x, or None for structural problems
    reason: str

    def __str__(self):
        where = "" if self.index is None else f" at x={self.index}"
        return f"{self.reason}{where}"


def _first_duplicate(values: Sequence[int], n: int) -> int | None:
    seen = set()
    for x, v in zip(range(1, n), values):
        if not 1 <= v <= n - 1 or v in seen:
            return x
        seen.add(v)
    return None


def check_certificate(cert: OrthoCertificate) -> Violation | None:
    """Return the first problem with ``cert``, or None if it is valid."""
    n = cert.n
    if n < 2:
        return Violation(None, f"modulus {n} below 2")
    if len(cert.sigma) != n - 1:
        return Violation(None, f"sigma has {len(cert.sigma)} entries, expected {n - 1}")
    if len(cert.image) != n - 1:
        return Violation(None, f"image has {len(cert.image)} entries, expected {n - 1}")
    bad = _first_duplicate(cert.sigma, n)
    if bad is not None:
        return Violation(bad, "sigma is not a bijection of the nonzero residues")
    expected = combined_map(cert.sigma, cert.kind, n)
    for x, (got, want) in enumerate(zip(cert.image, expected), start=1):
        if got != want:
            return Violation(x, f"image entry {got} disagrees with recomputed {want}")
    bad = _first_duplicate(expected, n)
    if bad is not None:
        return Violation(bad, "combined map is not a bijection of the nonzero residues")
    return None


def verify_certificate(cert: OrthoCertificate) -> bool:
    return check_certificate(cert) is None


def read_certificates(lines: Iterable[str]):
    """Parse JSON-lines certificate records, skipping blank lines."""
    for line in lines:
        line = line.strip()
        if line:
            yield OrthoCertificate.from_json(line)
