"""Forward-mode differentiation over mpmath intervals.

Running a bound formula through :class:`DualMath` with ``x = Dual(X, 1)``
yields an enclosure of f'(x) for all x in the interval X, which is what the
monotonicity certifier needs.
"""

from __future__ import annotations

from numbers import Integral

from .enclosure import IvMath, to_iv


class Dual:
    __slots__ = ("v", "d", "ctx")

    def __init__(self, v, d, ctx):
        self.v = v
        self.d = d
        self.ctx = ctx

    def _lift(self, o):
        if isinstance(o, Dual):
            return o
        return Dual(to_iv(self.ctx, o), self.ctx.mpf(0), self.ctx)

    def __add__(self, o):
        o = self._lift(o)
        return Dual(self.v + o.v, self.d + o.d, self.ctx)

    __radd__ = __add__

    def __neg__(self):
        return Dual(-self.v, -self.d, self.ctx)

    def __sub__(self, o):
        o = self._lift(o)
        return Dual(self.v - o.v, self.d - o.d, self.ctx)

    def __rsub__(self, o):
        return self._lift(o) - self

    def __mul__(self, o):
        o = self._lift(o)
        return Dual(self.v * o.v, self.d * o.v + self.v * o.d, self.ctx)

    __rmul__ = __mul__

    def __truediv__(self, o):
        o = self._lift(o)
        q = self.v / o.v
        return Dual(q, (self.d - q * o.d) / o.v, self.ctx)

    def __rtruediv__(self, o):
        return self._lift(o) / self

    def __pow__(self, k):
        if not isinstance(k, Integral) or k < 0:
            raise TypeError("Dual supports non-negative integer powers only")
        k = int(k)
        if k == 0:
            return self._lift(1)
        return Dual(self.v ** k, k * self.v ** (k - 1) * self.d, self.ctx)

    def __abs__(self):
        if self.v.a >= 0:
            return self
        if self.v.b <= 0:
            return -self
        raise ValueError("abs is not differentiable across 0")

    def __repr__(self):
        return f"Dual({self.v}, {self.d})"


class DualMath:
    """Formula backend producing (value, derivative) interval pairs."""

    def __init__(self, prec: int):
        self.base = IvMath(prec)
        self.prec = prec
        self.ctx = self.base.ctx
        self.pi = self._const(self.base.pi)
        self.e = self._const(self.base.e)

    def _const(self, v):
        return Dual(v, self.ctx.mpf(0), self.ctx)

    def variable(self, x):
        return Dual(to_iv(self.ctx, x), self.ctx.mpf(1), self.ctx)

    def num(self, v):
        return self._const(self.base.num(v))

    def const(self, text: str):
        return self._const(self.base.const(text))

    def log(self, x):
        return Dual(self.base.log(x.v), x.d / x.v, self.ctx)

    def exp(self, x):
        ev = self.base.exp(x.v)
        return Dual(ev, ev * x.d, self.ctx)

    def sqrt(self, x):
        r = self.base.sqrt(x.v)
        if x.d.a == 0 and x.d.b == 0:
            return Dual(r, x.d, self.ctx)
        return Dual(r, x.d / (2 * r), self.ctx)

    def rpow(self, x, r: str):
        return self.exp(self.const(r) * self.log(x))

    def positive(self, x, what: str):
        self.base.positive(x.v, what)
        return x

    def li(self, x):
        return Dual(self.base.li(x.v), x.d / self.base.log(x.v), self.ctx)

    def intlog(self, k: int, x):
        return Dual(self.base.intlog(k, x.v), x.d / self.base.log(x.v) ** k, self.ctx)
