"""Monotonicity certificates from derivative enclosures on adaptive pieces."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

from ..errors import UnresolvedError
from ..analytic.dual import DualMath
from ..analytic.enclosure import to_iv
from ..analytic.registry import resolve

MAX_DEPTH = 40
MAX_PIECES = 200_000


class Monotonicity(enum.Enum):
    INCREASING = "Increasing"
    DECREASING = "Decreasing"
    UNRESOLVED = "Unresolved"


@dataclass(frozen=True)
class MonotoneCert:
    verdict: Monotonicity
    lo: Fraction
    hi: Fraction
    pieces: int
    # first piece where the sign could not be fixed (for UNRESOLVED)
    stuck: tuple | None = None

    def __bool__(self):
        return self.verdict is not Monotonicity.UNRESOLVED


def _split(a: Fraction, b: Fraction) -> Fraction:
    if a > 0 and b > 4 * a:
        # geometric midpoint, rounded to a short rational
        g = math.isqrt(int(a * b)) if a * b >= 1 else None
        if g and a < g < b:
            return Fraction(g)
    return (a + b) / 2


def _sign(f, m: DualMath, a: Fraction, b: Fraction) -> int:
    """+1 / -1 if f' is certainly of that sign on [a, b], 0 if undecided."""
    ctx = m.ctx
    x = m.variable(ctx.mpf([to_iv(ctx, a).a, to_iv(ctx, b).b]))
    try:
        d = f(m, x).d
    except UnresolvedError:
        return 0
    if d.a > 0:
        return 1
    if d.b < 0:
        return -1
    return 0


def certify_monotone(f, lo, hi, precisions=(128, 512)) -> MonotoneCert:
    """Certify f strictly increasing or decreasing on [lo, hi].

    The derivative is enclosed on each piece by interval forward-mode
    differentiation; pieces are bisected (geometrically on wide ranges) up to
    depth 40.  Mixed or undecidable signs give UNRESOLVED.
    """
    f = resolve(f)
    lo, hi = Fraction(lo), Fraction(hi)
    if not lo <= hi:
        raise ValueError("empty range")
    f.check_domain(lo)
    fine, coarse = DualMath(precisions[-1]), DualMath(precisions[0])
    want = 0
    pieces = 0
    stack = [(lo, hi, 0)]
    while stack:
        a, b, depth = stack.pop()
        s = _sign(f, coarse, a, b)
        if s == 0 and depth >= MAX_DEPTH:
            s = _sign(f, fine, a, b)
        if s == 0:
            if depth >= MAX_DEPTH or pieces >= MAX_PIECES or a == b:
                return MonotoneCert(Monotonicity.UNRESOLVED, lo, hi, pieces, (a, b))
            mid = _split(a, b)
            stack.append((mid, b, depth + 1))
            stack.append((a, mid, depth + 1))
            continue
        if want and s != want:
            return MonotoneCert(Monotonicity.UNRESOLVED, lo, hi, pieces, (a, b))
        want = s
        pieces += 1
    verdict = Monotonicity.INCREASING if want > 0 else Monotonicity.DECREASING
    return MonotoneCert(verdict, lo, hi, pieces)

