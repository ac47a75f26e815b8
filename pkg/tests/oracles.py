"""Independent reference implementations used as test oracles.

Nothing here imports the package under test.
"""

import math
from fractions import Fraction

import mpmath


def trial_division_primes(limit):
    """Primes <= limit by trial division against earlier primes."""
    out = []
    for n in range(2, limit + 1):
        r = math.isqrt(n)
        for p in out:
            if p > r:
                out.append(n)
                break
            if n % p == 0:
                break
        else:
            out.append(n)
    return out


def is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    r = math.isqrt(n)
    f = 3
    while f <= r:
        if n % f == 0:
            return False
        f += 2
    return True


class PrimeTable:
    """pi(x) by bisection over a trial-division prime list."""

    def __init__(self, limit):
        import bisect
        self.limit = limit
        self.primes = trial_division_primes(limit)
        self._bisect = bisect.bisect_right

    def pi(self, x):
        x = math.floor(x)
        assert x <= self.limit
        return self._bisect(self.primes, x)


def li_quad(x, dps=40):
    """li(x) = li(2) + int_2^x dt/log t, the integral by Gauss-Legendre quadrature.

    li(2) itself comes from the principal value int_0^2 with the singularity
    removed analytically: int_0^2 (1/log t - 1/(t-1)) dt + log(1) = that integral.
    """
    with mpmath.workdps(dps):
        f = lambda t: 1 / mpmath.log(t) - 1 / (t - 1)
        li2 = mpmath.quad(f, [0, 1, 2])
        if x == 2:
            return li2
        return li2 + mpmath.quad(lambda t: 1 / mpmath.log(t), [2, x])


def ramanujan_fails_at_integer(n, pi, dps=50):
    """pi(n)^2 >= e n / log n * pi(n/e), evaluated at high precision."""
    with mpmath.workdps(dps):
        e = mpmath.e
        rhs = e * n / mpmath.log(n) * pi(int(mpmath.floor(n / e)))
        return pi(n) ** 2 >= rhs


def frac_floor_div_e(n, k=1):
    with mpmath.workdps(60):
        return int(mpmath.floor(mpmath.mpf(n) / mpmath.e ** k))


def to_fraction(v):
    return Fraction(mpmath.nstr(v, 60, min_fixed=-mpmath.inf, max_fixed=mpmath.inf))
