"""Logarithmic integral by the exponential-integral series.

li(x) = gamma + log|log x| + sum_{k>=1} (log x)^k / (k * k!)

For K + 2 > 2|u| the tail beyond term K is at most twice term K+1, which
gives a rigorous truncation bound.  For x > 1 every term is positive and
increasing in log x, so the sum is taken in integer fixed point, rounded
down at the lower end of log x and up at the upper end.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from mpmath.libmp import to_man_exp

from ..errors import DomainError
from .enclosure import iv_context, to_iv

# Euler-Mascheroni constant, 170 significant digits
EULER_GAMMA = (
    "0.57721566490153286060651209008240243104215933593992359880576723488486772677766"
    "467093694706329174674951463144724980708248096050401448654283622417399764492353"
    "625350033374"
)
_EULER_ERR = Fraction(1, 10**168)


@lru_cache(maxsize=None)
def _euler_fraction_bounds():
    g = Fraction(EULER_GAMMA)
    return g - _EULER_ERR, g + _EULER_ERR


def _euler(ctx):
    lo, hi = _euler_fraction_bounds()
    return ctx.mpf([to_iv(ctx, lo).a, to_iv(ctx, hi).b])


def _fixed(v, bits: int, up: bool) -> int:
    """v * 2^bits rounded down (or up) to an integer; v a nonnegative raw mpf tuple."""
    man, exp = to_man_exp(v)
    shift = exp + bits
    if shift >= 0:
        return man << shift
    q, r = divmod(man, 1 << -shift)
    return q + 1 if up and r else q


def _series_fixed(u, bits: int, up: bool) -> int:
    """sum_{k>=1} u^k / (k k!) * 2^bits for u > 0, rounded down or (with the tail) up."""
    U = _fixed(u, bits, up)
    one = 1 << bits
    term, total, k = one, 0, 1
    while True:
        num = term * U
        if up:
            term = -(-num // (k << bits))
            total += -(-term // k)
        else:
            term = num // (k << bits)
            total += term // k
        k += 1
        if term == 0:
            return total
        if 2 * U < k * one:
            # u < k/2: later terms shrink by at least half each, so the tail is below 2 * next
            nxt = -(-term * U // (k * k << bits))
            if nxt <= 1:
                return total + 2 * nxt + 2 if up else total


def _li_above_one(ctx, x):
    """li for x > 1: the series terms are positive and increasing in log x."""
    w = iv_context(ctx.prec + 24)
    u = w.log(to_iv(w, x))
    bits = ctx.prec + 40
    ua, ub = u._mpi_
    lo = _series_fixed(ua, bits, False)
    hi = _series_fixed(ub, bits, True)
    scale = w.mpf(2) ** -bits
    series = w.mpf([(w.mpf(lo) * scale).a, (w.mpf(hi) * scale).b])
    return to_iv(ctx, _euler(w) + w.log(u) + series)


def _li_point(ctx, x):
    """li at a point (or narrow interval) x with 0 < x != 1."""
    prec = ctx.prec
    u0 = ctx.log(x)
    mag = float(max(abs(u0.a), abs(u0.b)))
    # alternating series for x < 1 cancels about |u| / ln 2 bits
    guard = 24 + (int(mag * 1.45) if u0.b < 0 else 0)
    w = iv_context(prec + guard)
    xw = to_iv(w, x)
    u = w.log(xw)
    if u.a <= 0 <= u.b:
        raise DomainError("li is singular at x = 1")
    total = _euler(w) + w.log(abs(u))
    term = w.mpf(1)
    k = 1
    tiny = w.mpf(2) ** (-(prec + guard + 8))
    while True:
        term = term * u / k
        total = total + term / k
        k += 1
        if k > 2 * mag + 1:
            nxt = abs(term * u / k) / k
            if nxt.b < tiny * max(abs(total).a, 1):
                total = total + w.mpf([-2 * nxt.b, 2 * nxt.b])
                break
    return to_iv(ctx, total)


def li_iv(ctx, x):
    """Interval enclosure of li(x); x may be a non-degenerate interval."""
    if x.a <= 0:
        raise DomainError("li needs x > 0")
    if x.a <= 1 <= x.b:
        raise DomainError("li is singular at x = 1")
    if x.a > 1:
        return _li_above_one(ctx, x)
    if x.a == x.b:
        return _li_point(ctx, x)
    lo = _li_point(ctx, ctx.mpf(x.a))
    hi = _li_point(ctx, ctx.mpf(x.b))
    if x.a > 1:            # increasing on (1, oo)
        return ctx.mpf([lo.a, hi.b])
    return ctx.mpf([hi.a, lo.b])  # decreasing on (0, 1)


def _intlog_point(ctx, k, x):
    val = li_iv(ctx, x)
    L = ctx.log(x)
    for j in range(2, k + 1):
        val = (val - x / L ** (j - 1)) / (j - 1)
    return val


def intlog_iv(ctx, k: int, x):
    """Antiderivative of 1 / log(t)**k normalised by I_1 = li.

    I_k(x) = (I_{k-1}(x) - x / log(x)**(k-1)) / (k - 1); only differences
    I_k(b) - I_k(a) are meaningful.
    """
    if k < 1:
        raise ValueError("k must be positive")
    if x.a <= 1:
        raise DomainError("intlog needs x > 1")
    if x.a == x.b:
        return _intlog_point(ctx, k, x)
    lo = _intlog_point(ctx, k, ctx.mpf(x.a))
    hi = _intlog_point(ctx, k, ctx.mpf(x.b))
    return ctx.mpf([lo.a, hi.b])


def li(x, precision: int = 128):
    """Enclosure of li(x) for real x > 0, x != 1."""
    from .enclosure import Enclosure

    if precision < 53:
        raise ValueError("precision must be at least 53 bits")
    ctx = iv_context(precision)
    xv = to_iv(ctx, x)
    return Enclosure.from_iv(li_iv(ctx, xv))
