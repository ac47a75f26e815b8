"""Vectorised interval arithmetic in float64 with outward rounding.

Basic operations are correctly rounded by IEEE 754, so stepping one ulp
outward encloses the exact result.  Library functions (log, exp, expi) are
not correctly rounded; their results are widened by a relative margin that
covers a documented error of a few ulps many times over.

Entries that cannot be enclosed (division by an interval containing 0,
logarithm of a non-positive number, ...) become [-inf, +inf], which every
comparison treats as undecided.  Callers escalate those to the
multiprecision backend, which reports the precise domain error.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Integral

import numpy as np
from scipy.special import expi

_INF = np.inf
LIB_REL = 2.0**-46   # log / exp / expm1 margin (~64 ulp)
LI_REL = 2.0**-40    # expi composed with log
_TWO53 = 2**53


def _down(v):
    return np.nextafter(v, -_INF)


def _up(v):
    return np.nextafter(v, _INF)


def _widen(lo, hi, rel, absolute=0.0):
    return lo - np.abs(lo) * rel - absolute, hi + np.abs(hi) * rel + absolute


def _frac_box(f: Fraction):
    v = float(f)
    if Fraction(v) == f:
        return v, v
    return float(_down(v)), float(_up(v))


class Box:
    __slots__ = ("lo", "hi")
    __array_priority__ = 1000

    def __init__(self, lo, hi=None):
        lo = np.asarray(lo, dtype=np.float64)
        self.lo = lo
        self.hi = lo if hi is None else np.asarray(hi, dtype=np.float64)

    @staticmethod
    def of(v) -> "Box":
        if isinstance(v, Box):
            return v
        if isinstance(v, bool):
            raise TypeError("bool is not a number here")
        if isinstance(v, Integral):
            v = int(v)
            if abs(v) <= _TWO53:
                return Box(float(v))
            return Box(*_frac_box(Fraction(v)))
        if isinstance(v, Fraction):
            return Box(*_frac_box(v))
        if isinstance(v, float):
            return Box(v)
        if hasattr(v, "lo_fraction"):  # Enclosure
            return Box(_frac_box(v.lo_fraction())[0], _frac_box(v.hi_fraction())[1])
        if isinstance(v, np.ndarray):
            if v.dtype.kind in "ui":
                f = v.astype(np.float64)
                if v.size and int(np.abs(v).max()) > _TWO53:
                    return Box(_down(f), _up(f))
                return Box(f)
            return Box(v.astype(np.float64))
        raise TypeError(f"cannot box {type(v).__name__}")

    def _valid(self):
        return np.isfinite(self.lo) & np.isfinite(self.hi)

    @staticmethod
    def _blank(lo, hi, bad):
        if np.any(bad):
            lo = np.where(bad, -_INF, lo)
            hi = np.where(bad, _INF, hi)
        return Box(lo, hi)

    def __add__(self, o):
        o = Box.of(o)
        return Box(_down(self.lo + o.lo), _up(self.hi + o.hi))

    __radd__ = __add__

    def __neg__(self):
        return Box(-self.hi, -self.lo)

    def __sub__(self, o):
        o = Box.of(o)
        return Box(_down(self.lo - o.hi), _up(self.hi - o.lo))

    def __rsub__(self, o):
        return Box.of(o) - self

    def __mul__(self, o):
        o = Box.of(o)
        with np.errstate(invalid="ignore"):
            p = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
            lo = np.minimum(np.minimum(p[0], p[1]), np.minimum(p[2], p[3]))
            hi = np.maximum(np.maximum(p[0], p[1]), np.maximum(p[2], p[3]))
        return Box._blank(_down(lo), _up(hi), np.isnan(lo) | np.isnan(hi))

    __rmul__ = __mul__

    def __truediv__(self, o):
        o = Box.of(o)
        bad = (o.lo <= 0) & (o.hi >= 0)
        with np.errstate(divide="ignore", invalid="ignore"):
            q = (self.lo / o.lo, self.lo / o.hi, self.hi / o.lo, self.hi / o.hi)
            lo = np.minimum(np.minimum(q[0], q[1]), np.minimum(q[2], q[3]))
            hi = np.maximum(np.maximum(q[0], q[1]), np.maximum(q[2], q[3]))
        bad = bad | np.isnan(lo) | np.isnan(hi)
        return Box._blank(_down(lo), _up(hi), bad)

    def __rtruediv__(self, o):
        return Box.of(o) / self

    def __pow__(self, k):
        if not isinstance(k, Integral) or k < 0:
            raise TypeError("Box supports non-negative integer powers only")
        k = int(k)
        if k == 0:
            return Box(np.ones_like(self.lo))
        out = self
        for _ in range(k - 1):
            out = out * self
        return out

    def __abs__(self):
        lo = np.where(self.lo >= 0, self.lo, np.where(self.hi <= 0, -self.hi, 0.0))
        hi = np.maximum(np.abs(self.lo), np.abs(self.hi))
        return Box(lo, hi)

    def __getitem__(self, idx):
        return Box(np.broadcast_to(self.lo, np.broadcast(self.lo, self.hi).shape)[idx],
                   np.broadcast_to(self.hi, np.broadcast(self.lo, self.hi).shape)[idx])

    def __repr__(self):
        return f"Box({self.lo!r}, {self.hi!r})"


class BoxMath:
    """Formula backend over :class:`Box` ("53-bit" tier)."""

    prec = 53

    def __init__(self):
        self.pi = Box(*_frac_box_float(math.pi))
        self.e = Box(*_frac_box_float(math.e))

    def num(self, v):
        return Box.of(v)

    def const(self, text: str):
        return Box.of(Fraction(text))

    def log(self, x):
        bad = ~(x.lo > 0)
        with np.errstate(divide="ignore", invalid="ignore"):
            lo, hi = _widen(np.log(np.where(bad, 1.0, x.lo)), np.log(x.hi), LIB_REL, 1e-300)
        return Box._blank(lo, hi, bad)

    def exp(self, x):
        with np.errstate(over="ignore"):
            lo, hi = _widen(np.exp(x.lo), np.exp(x.hi), LIB_REL)
        return Box(np.maximum(lo, 0.0), hi)

    def sqrt(self, x):
        bad = x.lo < 0
        with np.errstate(invalid="ignore"):
            lo = _down(np.sqrt(np.where(bad, 0.0, x.lo)))
            hi = _up(np.sqrt(x.hi))
        return Box._blank(np.maximum(lo, 0.0), hi, bad)

    def rpow(self, x, r: str):
        return self.exp(self.const(r) * self.log(x))

    def positive(self, v, what: str):
        return Box._blank(v.lo, v.hi, ~(v.lo > 0))

    def li(self, x):
        bad = ~(x.lo > 1)
        with np.errstate(divide="ignore", invalid="ignore"):
            ulo = np.log(np.where(bad, 2.0, x.lo))
            uhi = np.log(np.where(bad, 2.0, x.hi))
            ulo = ulo - np.abs(ulo) * LIB_REL
            uhi = uhi + np.abs(uhi) * LIB_REL
            lo, hi = _widen(expi(ulo), expi(uhi), LI_REL, LI_REL)
        return Box._blank(lo, hi, bad | ~np.isfinite(lo) | ~np.isfinite(hi))

    def _intlog_point(self, k, x):
        val = self.li(x)
        L = self.log(x)
        for j in range(2, k + 1):
            val = (val - x / L ** (j - 1)) / (j - 1)
        return val

    def intlog(self, k: int, x):
        lo = self._intlog_point(k, Box(x.lo))
        if x.hi is x.lo or np.array_equal(x.lo, x.hi):
            return lo
        hi = self._intlog_point(k, Box(x.hi))
        return Box(lo.lo, hi.hi)


def _frac_box_float(v: float):
    return float(_down(v)), float(_up(v))


def certainly_less(a: Box, b: Box):
    return a.hi < b.lo


def certainly_geq(a: Box, b: Box):
    return a.lo >= b.hi
