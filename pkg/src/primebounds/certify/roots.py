"""Real root isolation in exact arithmetic.

Two independent backends: Descartes' rule of signs on a bisection tree, and
Sturm sequences.  Both work on the square-free part, so every root is
reported once regardless of multiplicity.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .poly import IntPoly, _divmod_q


@dataclass(frozen=True)
class RootInterval:
    """Open interval (lo, hi) with exactly one root, or the exact root lo == hi."""

    lo: Fraction
    hi: Fraction

    @property
    def exact(self) -> bool:
        return self.lo == self.hi

    def contains(self, y) -> bool:
        y = Fraction(y)
        return y == self.lo if self.exact else self.lo < y < self.hi

    def __str__(self):
        return f"[{self.lo}, {self.hi}]" if self.exact else f"({self.lo}, {self.hi})"


def _ceil_root(num: int, den: int, k: int) -> int:
    """Smallest integer r >= 0 with r**k * den >= num."""
    if num <= 0:
        return 0
    lo, hi = 0, 1
    while hi ** k * den < num:
        hi *= 2
    while lo < hi:
        mid = (lo + hi) // 2
        if mid ** k * den >= num:
            hi = mid
        else:
            lo = mid + 1
    return lo


def positive_root_bound(p: IntPoly) -> int:
    """Power of two strictly above every positive root (Fujiwara's bound)."""
    cs, n = p.coeffs, p.degree
    if n <= 0:
        return 1
    an = abs(cs[-1])
    best = 0
    for k in range(1, n + 1):
        c = abs(cs[n - k])
        if not c:
            continue
        if k == n:
            best = max(best, _ceil_root(c, 2 * an, k))
        else:
            best = max(best, _ceil_root(c, an, k))
    bound = 2 * best + 1
    out = 1
    while out <= bound:
        out *= 2
    return out


def _descartes(p: IntPoly, a: Fraction, b: Fraction) -> int:
    """Sign-variation count bounding the number of roots in the open (a, b)."""
    t, _ = p.compose_affine(a, b - a)
    return t.reverse().taylor_shift(1).sign_variations()


def _search_span(p: IntPoly, start: Fraction) -> Fraction:
    shifted, _ = p.compose_affine(start, 1)
    return Fraction(positive_root_bound(shifted))


def _isolate_descartes(sf: IntPoly, start: Fraction) -> list[RootInterval]:
    out: list[RootInterval] = []
    stack = [(start, start + _search_span(sf, start))]
    while stack:
        a, b = stack.pop()
        v = _descartes(sf, a, b)
        if v == 0:
            continue
        if v == 1:
            out.append(RootInterval(a, b))
            continue
        mid = (a + b) / 2
        if sf(mid) == 0:
            out.append(RootInterval(mid, mid))
        stack.append((mid, b))
        stack.append((a, mid))
    return out


class SturmSequence:
    def __init__(self, p: IntPoly):
        seq = [[Fraction(c) for c in p.coeffs], [Fraction(c) for c in p.derivative().coeffs]]
        while seq[-1] and len(seq[-1]) > 1:
            _, r = _divmod_q(seq[-2], seq[-1])
            if not r:
                break
            seq.append([-c for c in r])
        self.seq = [s for s in seq if s]

    @staticmethod
    def _eval(cs, y: Fraction) -> Fraction:
        acc = Fraction(0)
        for c in reversed(cs):
            acc = acc * y + c
        return acc

    def variations_at(self, y: Optional[Fraction]) -> int:
        """Sign changes at y (None means +infinity)."""
        if y is None:
            vals = [s[-1] for s in self.seq]
        else:
            vals = [self._eval(s, y) for s in self.seq]
        signs = [v > 0 for v in vals if v != 0]
        return sum(1 for s, t in zip(signs, signs[1:]) if s != t)

    def count(self, a: Fraction, b: Optional[Fraction]) -> int:
        """Number of distinct roots in (a, b] (b = None: (a, infinity))."""
        return self.variations_at(a) - self.variations_at(b)


def _isolate_sturm(sf: IntPoly, start: Fraction) -> list[RootInterval]:
    st = SturmSequence(sf)
    out: list[RootInterval] = []
    stack = [(start, start + _search_span(sf, start))]
    while stack:
        a, b = stack.pop()
        n = st.count(a, b) - (1 if sf(b) == 0 else 0)   # open interval
        if n == 0:
            continue
        if n == 1:
            out.append(RootInterval(a, b))
            continue
        mid = (a + b) / 2
        if sf(mid) == 0:
            out.append(RootInterval(mid, mid))
        stack.append((mid, b))
        stack.append((a, mid))
    return out


def isolate_real_roots(p: IntPoly, start=None, method: str = "descartes") -> list[RootInterval]:
    """Disjoint isolating intervals, ascending, for every real root >= ``start``.

    ``start=None`` isolates all real roots.
    """
    if p.is_zero():
        raise ValueError("the zero polynomial has no isolated roots")
    sf = p.squarefree()
    if sf.degree <= 0:
        return []
    if start is None:
        start = -Fraction(positive_root_bound(IntPoly(
            c * (-1) ** i for i, c in enumerate(sf.coeffs))))
    start = Fraction(start)
    found = [RootInterval(start, start)] if sf(start) == 0 else []
    if method == "descartes":
        found += _isolate_descartes(sf, start)
    elif method == "sturm":
        found += _isolate_sturm(sf, start)
    else:
        raise ValueError(f"unknown root isolation method {method!r}")
    return sorted(found, key=lambda r: (r.lo, r.hi))


def count_real_roots(p: IntPoly, start=None, method: str = "sturm") -> int:
    """Number of distinct real roots >= start."""
    if method == "sturm":
        sf = p.squarefree()
        if sf.degree <= 0:
            return 0
        st = SturmSequence(sf)
        if start is None:
            lo = -Fraction(positive_root_bound(IntPoly(c * (-1) ** i for i, c in enumerate(sf.coeffs))))
        else:
            lo = Fraction(start)
        return st.count(lo, None) + (1 if sf(lo) == 0 else 0)
    return len(isolate_real_roots(p, start, method))


def refine(p: IntPoly, root: RootInterval, width) -> RootInterval:
    """Shrink an isolating interval of p below ``width`` by bisection."""
    if root.exact:
        return root
    sf = p.squarefree()
    st = SturmSequence(sf)
    a, b = root.lo, root.hi
    width = Fraction(width)
    while b - a > width:
        mid = (a + b) / 2
        if sf(mid) == 0:
            return RootInterval(mid, mid)
        if st.count(a, mid):
            b = mid
        else:
            a = mid
    return RootInterval(a, b)
