"""Exact real points of the form q * e^k and exact floors of their multiples.

Breakpoints of the Ramanujan-type checks sit at e^n * p; range endpoints may
be written the same way ("38358837683*e").  Such a value is never an integer
for k != 0, so floors and comparisons always resolve with enough precision.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from ..analytic.enclosure import IvMath, hi_fraction, lo_fraction, to_iv
from ..errors import UnresolvedError
from ..numparse import parse_real

_PRECS = (128, 256, 512, 1024, 4096)
_SCALED = re.compile(r"^\s*(.+?)\s*\*\s*e(?:\s*\^\s*([+-]?\d+))?\s*$")


@lru_cache(maxsize=64)
def exp_bounds(k: int, prec: int = 256) -> tuple[Fraction, Fraction]:
    """Rational lower and upper bounds for e^k."""
    v = IvMath(prec).exp(IvMath(prec).num(k))
    return lo_fraction(v), hi_fraction(v)


@dataclass(frozen=True)
class Point:
    """The real number q * e^shift with q > 0 rational."""

    q: Fraction
    shift: int = 0

    def __post_init__(self):
        object.__setattr__(self, "q", Fraction(self.q))
        if self.q <= 0:
            raise ValueError("points must be positive")

    @classmethod
    def coerce(cls, v) -> "Point":
        if isinstance(v, Point):
            return v
        if isinstance(v, str):
            return cls.parse(v)
        return cls(Fraction(v))

    @classmethod
    def parse(cls, text: str) -> "Point":
        """'1e9', '3/2', '38358837683*e', '5*e^2'."""
        m = _SCALED.match(text)
        if m:
            return cls(parse_real(m.group(1)), int(m.group(2) or 1))
        return cls(parse_real(text))

    @property
    def exact(self) -> bool:
        return self.shift == 0

    def iv(self, m: IvMath):
        q = to_iv(m.ctx, self.q)
        return q * m.exp(m.num(self.shift)) if self.shift else q

    def __float__(self):
        return float(self.q) * math.exp(self.shift)

    def floor_scaled(self, k: int = 0) -> int:
        """floor(self * e^-k), exactly."""
        s = self.shift - k
        if s == 0:
            return math.floor(self.q)
        for prec in _PRECS:
            lo, hi = exp_bounds(s, prec)
            a, b = math.floor(self.q * lo), math.floor(self.q * hi)
            if a == b:
                return a
        raise UnresolvedError(f"floor of {self} * e^{-k} not resolved")

    def floor(self) -> int:
        return self.floor_scaled(0)

    def _cmp(self, other: "Point") -> int:
        if self.shift == other.shift:
            return (self.q > other.q) - (self.q < other.q)
        # q1 e^s1 vs q2 e^s2  <=>  q1 e^(s1-s2) vs q2, never equal
        s = self.shift - other.shift
        for prec in _PRECS:
            lo, hi = exp_bounds(s, prec)
            if self.q * lo > other.q:
                return 1
            if self.q * hi < other.q:
                return -1
        raise UnresolvedError(f"cannot order {self} and {other}")

    def __lt__(self, other):
        return self._cmp(Point.coerce(other)) < 0

    def __le__(self, other):
        return self._cmp(Point.coerce(other)) <= 0

    def __gt__(self, other):
        return self._cmp(Point.coerce(other)) > 0

    def __ge__(self, other):
        return self._cmp(Point.coerce(other)) >= 0

    def text(self) -> str:
        q = self.q
        base = str(q.numerator) if q.denominator == 1 else _decimal(q)
        if not self.shift:
            return base
        return f"{base}*e" if self.shift == 1 else f"{base}*e^{self.shift}"

    __str__ = text

    def key(self) -> str:
        """Lossless serialisation."""
        return f"{self.q}|{self.shift}"

    @classmethod
    def from_key(cls, text: str) -> "Point":
        q, s = text.split("|")
        return cls(Fraction(q), int(s))


def _decimal(q: Fraction) -> str:
    """Terminating decimals in positional form, other rationals as a/b."""
    d = q.denominator
    twos = fives = 0
    while d % 2 == 0:
        d //= 2
        twos += 1
    while d % 5 == 0:
        d //= 5
        fives += 1
    if d != 1:
        return str(q)
    digits = max(twos, fives)
    scaled = q * 10**digits
    s = str(abs(scaled.numerator)).rjust(digits + 1, "0")
    out = f"{s[:-digits]}.{s[-digits:]}" if digits else s
    return ("-" if q < 0 else "") + out


def floor_times_exp(q: np.ndarray, k: int) -> np.ndarray:
    """floor(q * e^k) for an integer array q (entries below 2**53), exactly.

    The float product is within ~1e-15 relative of the truth; entries whose
    fractional part lies that close to an integer are redone with rationals.
    """
    q = np.asarray(q, dtype=np.int64)
    if q.size == 0:
        return q.copy()
    prod = q.astype(np.float64) * math.exp(k)
    out = np.floor(prod).astype(np.int64)
    frac = prod - np.floor(prod)
    tol = np.abs(prod) * 4e-15 + 1e-300
    risky = np.flatnonzero((frac < tol) | (frac > 1 - tol))
    if risky.size:
        for i in risky.tolist():
            out[i] = Point(int(q[i]), k).floor()
    return out
