"""Univariate polynomials with exact integer coefficients."""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from numbers import Integral, Rational
from typing import Iterable, Sequence


class IntPoly:
    """Polynomial sum(c_i y**i); ``coeffs`` are ascending, trailing zeros stripped."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int]):
        cs = [int(c) for c in coeffs]
        for c in cs:
            if not isinstance(c, int):
                raise TypeError("coefficients must be integers")
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> "IntPoly":
        return cls([0] * k + [c])

    @classmethod
    def y(cls) -> "IntPoly":
        return cls([0, 1])

    @classmethod
    def from_rational(cls, coeffs: Sequence[Rational]) -> tuple["IntPoly", int]:
        """Clear denominators: returns (P, D) with P = D * sum(coeffs_i y**i)."""
        fr = [Fraction(c) for c in coeffs]
        den = 1
        for f in fr:
            den = den * f.denominator // gcd(den, f.denominator)
        return cls(int(f * den) for f in fr), den

    # basic properties
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self) -> int:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def is_zero(self) -> bool:
        return not self.coeffs

    def content(self) -> int:
        g = 0
        for c in self.coeffs:
            g = gcd(g, c)
        return g

    def primitive(self) -> "IntPoly":
        g = self.content()
        if g == 0:
            return self
        if self.lead < 0:
            g = -g
        return IntPoly(c // g for c in self.coeffs)

    # arithmetic
    def _coerce(self, o) -> "IntPoly":
        if isinstance(o, IntPoly):
            return o
        if isinstance(o, Integral):
            return IntPoly([int(o)])
        return NotImplemented

    def __add__(self, o):
        o = self._coerce(o)
        if o is NotImplemented:
            return o
        a, b = self.coeffs, o.coeffs
        n = max(len(a), len(b))
        return IntPoly((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n))

    __radd__ = __add__

    def __neg__(self):
        return IntPoly(-c for c in self.coeffs)

    def __sub__(self, o):
        o = self._coerce(o)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        o = self._coerce(o)
        if o is NotImplemented:
            return o
        a, b = self.coeffs, o.coeffs
        if not a or not b:
            return IntPoly([])
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return IntPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        out, base = IntPoly([1]), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, o):
        o = self._coerce(o)
        if o is NotImplemented:
            return o
        return self.coeffs == o.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def derivative(self) -> "IntPoly":
        return IntPoly(i * c for i, c in enumerate(self.coeffs) if i)

    def divmod_exact(self, d: "IntPoly") -> tuple["IntPoly", "IntPoly"]:
        """Pseudo-free division valid when lead(d) = +-1 or divides cleanly."""
        q, r = _divmod_q(self.coeffs, d.coeffs)
        if any(c.denominator != 1 for c in q + r):
            raise ValueError("division leaves non-integer coefficients")
        return IntPoly(int(c) for c in q), IntPoly(int(c) for c in r)

    # evaluation
    def __call__(self, y):
        """Exact value at an integer or rational point."""
        if isinstance(y, Integral):
            acc = 0
            for c in reversed(self.coeffs):
                acc = acc * int(y) + c
            return acc
        y = Fraction(y)
        p, q = y.numerator, y.denominator
        n = self.degree
        if n < 0:
            return Fraction(0)
        # homogeneous Horner: sum c_i p^i q^(n-i), then divide by q^n
        acc = 0
        qp = 1
        for c in reversed(self.coeffs):
            acc = acc * p + c * qp
            qp *= q
        return Fraction(acc, q ** n)

    def sign_at(self, y) -> int:
        v = self(y)
        return (v > 0) - (v < 0)

    def taylor_shift(self, a: int) -> "IntPoly":
        """p(y + a) for integer a."""
        cs = list(self.coeffs)
        n = len(cs)
        for i in range(n - 1):
            for j in range(n - 2, i - 1, -1):
                cs[j] += a * cs[j + 1]
        return IntPoly(cs)

    def compose_affine(self, a: Fraction, b: Fraction) -> tuple["IntPoly", int]:
        """D * p(a + b*y) with integer coefficients; returns (poly, D)."""
        a, b = Fraction(a), Fraction(b)
        out = [Fraction(0)]
        for c in reversed(self.coeffs):
            # out = out * (a + b y) + c
            nxt = [Fraction(0)] * (len(out) + 1)
            for i, v in enumerate(out):
                nxt[i] += v * a
                nxt[i + 1] += v * b
            nxt[0] += c
            out = nxt
        return IntPoly.from_rational(out)

    def reverse(self) -> "IntPoly":
        return IntPoly(reversed(self.coeffs))

    def sign_variations(self) -> int:
        signs = [c > 0 for c in self.coeffs if c]
        return sum(1 for s, t in zip(signs, signs[1:]) if s != t)

    def squarefree(self) -> "IntPoly":
        """Primitive square-free part p / gcd(p, p')."""
        if self.degree <= 0:
            return self.primitive()
        g = poly_gcd(self, self.derivative())
        if g.degree == 0:
            return self.primitive()
        q, r = _divmod_q(self.coeffs, g.coeffs)
        assert all(c == 0 for c in r)
        return IntPoly.from_rational(q)[0].primitive()

    # text
    def to_text(self) -> str:
        return " ".join(str(c) for c in self.coeffs) if self.coeffs else "0"

    @classmethod
    def from_text(cls, text: str) -> "IntPoly":
        return cls(int(t) for t in text.split())

    def __repr__(self):
        return f"IntPoly({list(self.coeffs)})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mag = abs(c)
            mono = "" if i == 0 else ("y" if i == 1 else f"y^{i}")
            body = str(mag) if (mag != 1 or i == 0) else ""
            term = body + mono
            parts.append(("- " if c < 0 else "+ ") + term)
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]


def _divmod_q(a: Sequence, b: Sequence) -> tuple[list[Fraction], list[Fraction]]:
    a = [Fraction(c) for c in a]
    b = [Fraction(c) for c in b]
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    r = list(a)
    while len(r) >= len(b) and any(r):
        shift = len(r) - len(b)
        f = r[-1] / b[-1]
        q[shift] = f
        for i, c in enumerate(b):
            r[shift + i] -= f * c
        r.pop()
        while r and r[-1] == 0:
            r.pop()
    return q, r


def poly_gcd(p: IntPoly, q: IntPoly) -> IntPoly:
    """Primitive gcd over Q (Euclid with primitive remainders)."""
    a, b = p.primitive(), q.primitive()
    while not b.is_zero():
        _, r = _divmod_q(a.coeffs, b.coeffs)
        a, b = b, IntPoly.from_rational(r)[0].primitive() if r else IntPoly([])
    return a.primitive()
