"""Enclosures and the multiprecision interval backend."""

from __future__ import annotations

import threading
from dataclasses import dataclass
from decimal import ROUND_CEILING, ROUND_FLOOR, Context, Decimal
from fractions import Fraction
from numbers import Integral, Rational

import mpmath
from mpmath.ctx_iv import MPIntervalContext

from ..errors import DomainError, UnresolvedError

PRECISIONS = (53, 128, 256, 512)

_lock = threading.Lock()
_contexts: dict[int, MPIntervalContext] = {}


def iv_context(prec: int) -> MPIntervalContext:
    """A private interval context fixed at ``prec`` bits (never mutated later)."""
    ctx = _contexts.get(prec)
    if ctx is None:
        with _lock:
            ctx = _contexts.get(prec)
            if ctx is None:
                ctx = MPIntervalContext()
                ctx.prec = prec
                _contexts[prec] = ctx
    return ctx


def _raw_mpf(t) -> mpmath.mpf:
    return mpmath.mp.make_mpf(t)


def _mpf_fraction(v: mpmath.mpf) -> Fraction:
    sign, man, exp, _ = v._mpf_
    if not man:
        if exp:  # +-inf or nan
            raise ValueError("non-finite endpoint")
        return Fraction(0)
    val = Fraction(int(man)) * (Fraction(2) ** int(exp))
    return -val if sign else val


def lo_fraction(v) -> Fraction:
    """Exact lower endpoint of an mpmath interval."""
    return _mpf_fraction(_raw_mpf(v._mpi_[0]))


def hi_fraction(v) -> Fraction:
    """Exact upper endpoint of an mpmath interval."""
    return _mpf_fraction(_raw_mpf(v._mpi_[1]))


@dataclass(frozen=True)
class Enclosure:
    """A closed interval [lo, hi] that contains the true value."""

    lo: mpmath.mpf
    hi: mpmath.mpf

    def __post_init__(self):
        if not self.lo <= self.hi:
            raise ValueError(f"empty enclosure [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, value) -> "Enclosure":
        f = Fraction(value) if not isinstance(value, Fraction) else value
        ctx = iv_context(128)
        return cls.from_iv(to_iv(ctx, f))

    @classmethod
    def from_iv(cls, v) -> "Enclosure":
        a, b = v._mpi_
        return cls(_raw_mpf(a), _raw_mpf(b))

    @property
    def width(self) -> mpmath.mpf:
        return mpmath.fsub(self.hi, self.lo, exact=True)

    @property
    def mid(self) -> float:
        return float((self.lo + self.hi) / 2)

    def contains(self, value) -> bool:
        f = Fraction(value) if not isinstance(value, Fraction) else value
        return self.lo_fraction() <= f <= self.hi_fraction()

    def lo_fraction(self) -> Fraction:
        return _mpf_fraction(self.lo)

    def hi_fraction(self) -> Fraction:
        return _mpf_fraction(self.hi)

    def certainly_less(self, other: "Enclosure") -> bool:
        return self.hi < other.lo

    def certainly_geq(self, other: "Enclosure") -> bool:
        return self.lo >= other.hi

    def format(self, digits: int = 25) -> tuple[str, str]:
        return format_down(self.lo, digits), format_up(self.hi, digits)

    def __str__(self):
        lo, hi = self.format(20)
        return f"[{lo}, {hi}]"


def _format(v: mpmath.mpf, digits: int, rounding) -> str:
    f = _mpf_fraction(v)
    if f == 0:
        return "0"
    ctx = Context(prec=digits + 40)
    exact = ctx.divide(Decimal(f.numerator), Decimal(f.denominator))
    out = Context(prec=digits, rounding=rounding).plus(exact)
    # guard digits make the quotient's own rounding negligible; nudge if exact was inexact
    if Fraction(out) < f and rounding is ROUND_CEILING:
        out = out.next_plus(Context(prec=digits))
    if Fraction(out) > f and rounding is ROUND_FLOOR:
        out = out.next_minus(Context(prec=digits))
    return format(out, "E") if abs(out.adjusted()) > 20 else format(out, "f")


def format_down(v: mpmath.mpf, digits: int = 25) -> str:
    return _format(v, digits, ROUND_FLOOR)


def format_up(v: mpmath.mpf, digits: int = 25) -> str:
    return _format(v, digits, ROUND_CEILING)


def to_iv(ctx: MPIntervalContext, value):
    """Convert an exact or interval quantity to an interval of ``ctx``."""
    if isinstance(value, Enclosure):
        return ctx.mpf([value.lo, value.hi])
    if isinstance(value, bool):
        raise TypeError("bool is not a number here")
    if isinstance(value, Integral):
        return ctx.mpf(int(value))
    if isinstance(value, Fraction) or isinstance(value, Rational):
        f = Fraction(value)
        if f.denominator == 1:
            return ctx.mpf(f.numerator)
        return ctx.mpf(f.numerator) / ctx.mpf(f.denominator)
    if isinstance(value, float):
        return ctx.mpf(value)
    if isinstance(value, str):
        return to_iv(ctx, Fraction(value))
    if hasattr(value, "_mpi_"):
        return ctx.mpf([_raw_mpf(value._mpi_[0]), _raw_mpf(value._mpi_[1])])
    if isinstance(value, mpmath.mpf):
        return ctx.mpf(value)
    raise TypeError(f"cannot enclose {type(value).__name__}")


class IvMath:
    """Formula backend over mpmath intervals at a fixed precision."""

    def __init__(self, prec: int):
        self.prec = prec
        self.ctx = iv_context(prec)
        self.pi = self.ctx.pi
        self.e = self.ctx.e

    def num(self, v):
        return to_iv(self.ctx, v)

    def const(self, text: str):
        return to_iv(self.ctx, Fraction(text))

    def log(self, x):
        if not x.a > 0:
            raise DomainError("logarithm of a non-positive quantity")
        return self.ctx.log(x)

    def exp(self, x):
        return self.ctx.exp(x)

    def sqrt(self, x):
        if x.a < 0:
            raise DomainError("square root of a negative quantity")
        return self.ctx.sqrt(x)

    def rpow(self, x, r: str):
        """x ** r for x > 0 and a decimal exponent r."""
        return self.exp(self.const(r) * self.log(x))

    def positive(self, v, what: str):
        if v.b <= 0:
            raise DomainError(f"{what} is not positive")
        if not v.a > 0:
            raise UnresolvedError(f"{what} may vanish (enclosure straddles 0)")
        return v

    def li(self, x):
        from .li import li_iv
        return li_iv(self.ctx, x)

    def intlog(self, k: int, x):
        from .li import intlog_iv
        return intlog_iv(self.ctx, k, x)

    def to_enclosure(self, v) -> Enclosure:
        return Enclosure.from_iv(v)
