"""Certified threshold constants and the h(x) positivity argument."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from ..analytic.enclosure import IvMath, hi_fraction, lo_fraction, to_iv
from ..analytic.functions import R
from ..errors import UnresolvedError

_PRECISIONS = (128, 256, 512)


def _decide(fn, *args) -> bool:
    """Evaluate a predicate returning (certainly_true, certainly_false) with escalation."""
    for prec in _PRECISIONS:
        yes, no = fn(IvMath(prec), *args)
        if yes:
            return True
        if no:
            return False
    raise UnresolvedError(f"could not decide {fn.__name__}{args}")


# -- A_0(n) -------------------------------------------------------------------

def a0_target(m: IvMath, n: int):
    """(1/(n+1)!) sum_{k<=n+1} 2 (k-1)! / log(2)^k."""
    l2 = m.log(m.num(2))
    tot = m.num(0)
    for k in range(1, n + 2):
        tot = tot + 2 * math.factorial(k - 1) / l2 ** k
    return tot / math.factorial(n + 1)


def _a0_holds(m: IvMath, n: int, x: int):
    X = m.num(x)
    v = X / m.log(X) ** (n + 2)
    t = a0_target(m, n)
    return v.a >= t.b, v.b < t.a


@dataclass(frozen=True)
class A0Cert:
    n: int
    value: int
    fails_below: bool    # inequality certified false somewhere in [value - 1, value)
    holds_at: bool       # inequality certified at value


def a0_holds(n: int, x: int) -> bool:
    """Certified truth of x/log(x)^(n+2) >= target at the integer x."""
    return _decide(_a0_holds, n, x)


def _a0_min_fails(m: IvMath, n: int):
    """x/log^(n+2) x attains its minimum e^(n+2)/(n+2)^(n+2) at x = e^(n+2)."""
    v = m.exp(m.num(n + 2)) / m.num((n + 2) ** (n + 2))
    t = a0_target(m, n)
    return v.b < t.a, v.a >= t.b


def threshold_A0_cert(n: int) -> A0Cert:
    if n < 1:
        raise ValueError("n must be positive")
    if not _decide(_a0_min_fails, n):
        return A0Cert(n, 2, False, True)       # holds for every x > 1
    turn = math.exp(n + 2)
    lo = math.floor(turn)        # treated as "fails": the minimum lies in [lo, lo + 1)
    hi = max(2 * lo, 4)
    while not _decide(_a0_holds, n, hi):
        lo, hi = hi, hi * 2
    while hi - lo > 1:           # invariant: crossing in (lo, hi], hi holds
        mid = (lo + hi) // 2
        if _decide(_a0_holds, n, mid):
            hi = mid
        else:
            lo = mid
    # at hi - 1 it fails, or hi - 1 <= e^(n+2) < hi and it fails at the minimum
    fails = hi - 1 <= turn or not _decide(_a0_holds, n, hi - 1)
    return A0Cert(n, hi, fails, _decide(_a0_holds, n, hi))


def threshold_A0(n: int) -> int:
    """Smallest integer X >= 2 with x/log(x)^(n+2) >= target for every real x >= X.

    The function decreases on (1, e^(n+2)) and increases afterwards, so X is
    the ceiling of the crossing on the increasing branch.
    """
    return threshold_A0_cert(n).value


# -- A_1(n, a), in log-space ---------------------------------------------------------

def _g(m: IvMath, n: int, a: Fraction, t):
    """sqrt(t/R) - (n + 1/4) (log t - log a); >= 0 iff the A_1 inequality holds at log x = t."""
    T = m.num(t)
    return m.sqrt(T / m.const(R)) - m.const(Fraction(4 * n + 1, 4)) * (m.log(T) - m.log(m.const(a)))


def _g_nonneg(m: IvMath, n: int, a: Fraction, t):
    v = _g(m, n, a, t)
    return v.a >= 0, v.b < 0


def threshold_A1(n: int, a) -> int:
    """log X (an integer) such that e^sqrt(log x / R) >= (log x / a)^(n+1/4) for all x >= X.

    Works with t = log x: g(t) = sqrt(t/R) - (n+1/4)(log t - log a) decreases
    up to t* = 4R(n+1/4)^2 and increases afterwards, so the answer is the
    first integer T >= t* with g(T) >= 0 (or the crossing point before t* when
    g is non-negative at t*).  The returned T is minimal among integers above
    t*; it satisfies the inequality for every real log x >= T.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    a = Fraction(a)
    if a <= 0:
        raise ValueError("a must be positive")
    tstar = 4 * R * Fraction(4 * n + 1, 4) ** 2
    if _decide(_g_nonneg, n, a, tstar):
        return 1                   # g is non-negative at its minimum, hence everywhere
    lo = math.floor(tstar)         # crossing lies beyond t*
    hi = max(2 * lo, 2)
    while not _decide(_g_nonneg, n, a, hi):
        lo, hi = hi, 2 * hi
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if _decide(_g_nonneg, n, a, mid):
            hi = mid
        else:
            lo = mid
    return hi


def a1_quadratic_form_positive(n: int, a, t) -> bool:
    """t - R (n+1/4)^2 (log t + log(1/a))^2 > 0 at t (enclosure check)."""
    a = Fraction(a)

    def pred(m, n, a, t):
        T = m.num(t)
        w = m.log(T) - m.log(m.const(a))
        v = T - m.const(R) * m.const(Fraction(4 * n + 1, 4)) ** 2 * w * w
        return v.a > 0, v.b <= 0
    return _decide(pred, n, a, t)


def envelope_a(n: int) -> Fraction:
    """A rational a with c a^(n+1/4) <= n!, so A_1(n, a) bounds the envelope switch-over.

    (log x / a)^(n+1/4) <= e^sqrt(log x/R) then gives
    c x / (log^(3/4) x e^sqrt(log x / R)) <= n! x / log^(n+1) x.
    """
    m = IvMath(128)
    c = 3 * m.sqrt(m.num(2)) / m.sqrt(m.pi * m.sqrt(m.const(R)))
    exact = m.exp(m.log(m.num(math.factorial(n)) / c) / m.const(Fraction(4 * n + 1, 4)))
    # round down to 1e-9 so that c a^(n+1/4) <= n! stays true
    return Fraction(math.floor(lo_fraction(exact) * 10**9), 10**9)


# -- h(x) > 0 beyond 233671227509 --------------------------------------------------

@dataclass(frozen=True)
class HCert:
    x0: int
    log_lower: Fraction       # rational lower bound for log x0 (> 16)
    ratio_upper: float        # upper end of q(log x0), must be < 1
    verdict: bool


def h_positive_from(x0: int = 233671227509) -> HCert:
    """Certify h(x) = -log^8 x + pi sqrt x (208 log^2 x + 96 log x + 144) > 0 for x >= x0.

    With u = log x, h > 0 iff q(u) = u^8 e^(-u/2) / (pi (208u^2 + 96u + 144)) < 1.
    log q has derivative 8/u - 1/2 - (416u + 96)/(208u^2 + 96u + 144) < 0 for u > 16,
    so q(log x0) < 1 and log x0 > 16 cover every x >= x0.
    """
    m = IvMath(256)
    u = m.log(m.num(x0))
    q = u ** 8 * m.exp(-u / 2) / (m.pi * (208 * u ** 2 + 96 * u + 144))
    ulo = Fraction(math.floor(lo_fraction(u) * 10**6), 10**6)
    qhi = hi_fraction(q)
    return HCert(x0, ulo, float(qhi), qhi < 1 and ulo > 16)


def h_sign_at(x: int) -> int:
    """Sign of h at an integer x (0 when undecided at 512 bits)."""
    for prec in _PRECISIONS:
        m = IvMath(prec)
        X = to_iv(m.ctx, x)
        L = m.log(X)
        v = -(L ** 8) + m.pi * m.sqrt(X) * (208 * L ** 2 + 96 * L + 144)
        if v.a > 0:
            return 1
        if v.b < 0:
            return -1
    return 0
