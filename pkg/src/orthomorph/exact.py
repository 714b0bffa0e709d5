"""Exact arithmetic for bounds that involve square roots of rationals."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True, order=False)
class SqrtRational:
    """The nonnegative real sqrt(square), compared exactly."""

    square: Fraction

    @classmethod
    def of(cls, value) -> "SqrtRational":
        value = Fraction(value)
        if value < 0:
            raise ValueError("SqrtRational.of needs a nonnegative value")
        return cls(value * value)

    @property
    def is_rational(self) -> bool:
        num, den = self.square.numerator, self.square.denominator
        return math.isqrt(num) ** 2 == num and math.isqrt(den) ** 2 == den

    def as_fraction(self) -> Fraction:
        if not self.is_rational:
            raise ValueError(f"sqrt({self.square}) is irrational")
        return Fraction(math.isqrt(self.square.numerator), math.isqrt(self.square.denominator))

    def __float__(self):
        return math.sqrt(self.square.numerator) / math.sqrt(self.square.denominator)

    def __mul__(self, other):
        if isinstance(other, SqrtRational):
            return SqrtRational(self.square * other.square)
        return SqrtRational(self.square * Fraction(other) ** 2)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, SqrtRational):
            return SqrtRational(self.square / other.square)
        return SqrtRational(self.square / Fraction(other) ** 2)

    def _cmp_key(self, other):
        if isinstance(other, SqrtRational):
            return other.square
        other = Fraction(other)
        if other < 0:
            return None
        return other * other

    def __eq__(self, other):
        key = self._cmp_key(other)
        return key is not None and self.square == key

    def __hash__(self):
        return hash(self.square)

    def __lt__(self, other):
        key = self._cmp_key(other)
        return False if key is None else self.square < key

    def __le__(self, other):
        key = self._cmp_key(other)
        return False if key is None else self.square <= key

    def __gt__(self, other):
        key = self._cmp_key(other)
        return True if key is None else self.square > key

    def __ge__(self, other):
        key = self._cmp_key(other)
        return True if key is None else self.square >= key

    def __str__(self):
        if self.is_rational:
            return str(self.as_fraction())
        return f"sqrt({self.square})"

    def to_record(self) -> dict:
        rec = {"value": float(self), "square": [self.square.numerator, self.square.denominator]}
        if self.is_rational:
            frac = self.as_fraction()
            rec["exact"] = [frac.numerator, frac.denominator]
        return rec
