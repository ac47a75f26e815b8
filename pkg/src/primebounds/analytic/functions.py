"""Closed-form estimates for pi(x) and theta(x).

Every family is written once as ``formula(m, x)`` against a small math
backend ``m`` (float boxes, multiprecision intervals, or interval duals), so
the same expression yields vectorised enclosures, high-precision enclosures
and derivative enclosures.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Optional

from ..errors import DomainError
from .enclosure import Enclosure, IvMath, iv_context, to_iv

# zero-free region constant
R = Fraction("5.573412")

# anchors at x1 = 10**13 that cannot be recomputed at desk scale
LARGE_ANCHORS = {
    10**13: {"pi": 346065536839, "theta_hi": 9999996988294},
}


@lru_cache(maxsize=None)
def panaitopol_coeffs(m: int) -> list[int]:
    """k_1..k_m with k_m + 1! k_{m-1} + ... + (m-1)! k_1 = m * m!."""
    if m < 0:
        raise ValueError("m must be non-negative")
    ks: list[int] = []
    for j in range(1, m + 1):
        rest = sum(math.factorial(i) * ks[j - 1 - i] for i in range(1, j))
        ks.append(j * math.factorial(j) - rest)
    return ks


# -- shared pieces -----------------------------------------------------------

def _c(m):
    """c = 3 sqrt 2 / sqrt(pi sqrt R)."""
    return 3 * m.sqrt(m.num(2)) / m.sqrt(m.pi * m.sqrt(m.const(R)))


def _d(m):
    """d = 2 / log 2 - li(2)."""
    two = m.num(2)
    return 2 / m.log(two) - m.li(two)


def _decay(m, L):
    """x-free factor 1 / (L**(3/4) e**sqrt(L/R))."""
    return 1 / (m.rpow(L, "0.75") * m.exp(m.sqrt(L / m.const(R))))


def _log_series(m, x, L, n: int):
    """sum_{k=1}^n (k-1)! x / L**k, by Horner in 1/L."""
    if n == 0:
        return m.num(0)
    s = m.num(1)
    for k in range(n - 1, 0, -1):
        s = 1 + k * s / L
    return x * s / L


def _log(m, x):
    L = m.log(x)
    m.positive(L, "log x")
    return L


@dataclass(frozen=True)
class BoundFunction:
    """A named estimate evaluable by any math backend."""

    ident: str
    family: str
    params: tuple
    description: str
    formula: Callable = field(compare=False, repr=False)
    domain_lo: Fraction = Fraction(0)
    domain_open: bool = True

    def __call__(self, m, x):
        return self.formula(m, x)

    def check_domain(self, x: Fraction) -> None:
        lo = self.domain_lo
        if x < lo or (self.domain_open and x == lo):
            op = ">" if self.domain_open else ">="
            raise DomainError(f"{self.ident}: needs x {op} {lo}, got {x}")

    def __str__(self):
        return self.ident


def _fn(ident, family, params, description, formula, lo=0, open_=True):
    return BoundFunction(ident, family, tuple(params), description, formula,
                         Fraction(lo), open_)


# -- families ----------------------------------------------------------------

def li_fn() -> BoundFunction:
    return _fn("li", "li", (), "li(x)", lambda m, x: m.li(x))


def li_offset() -> BoundFunction:
    return _fn("li-offset", "li-offset", (), "li(x) - li(2), the integral of 1/log t over [2, x]",
               lambda m, x: m.li(x) - m.li(m.num(2)), lo=1)


def theta_envelope() -> BoundFunction:
    def f(m, x):
        L = _log(m, x)
        pre = m.sqrt(m.num(8)) / m.sqrt(m.pi * m.sqrt(m.const(R)))
        return pre * x * m.rpow(L, "0.25") * m.exp(-m.sqrt(L / m.const(R)))
    return _fn("eq2.5-env", "theta-envelope", (),
               "sqrt(8)/sqrt(pi sqrt R) x log(x)^(1/4) exp(-sqrt(log(x)/R)), R = 5.573412",
               f, lo=1)


def power_envelope(eta, k: int, ident: Optional[str] = None) -> BoundFunction:
    eta = Fraction(eta)
    if k < 0:
        raise ValueError("k must be non-negative")

    def f(m, x):
        L = _log(m, x)
        return m.const(eta) * x / L ** k
    return _fn(ident or f"env:eta={_fmt(eta)},k={k}", "power-envelope", (eta, k),
               f"{_fmt(eta)} x / log(x)^{k}", f, lo=1)


def rational(coeffs, ident: str, description: Optional[str] = None) -> BoundFunction:
    """x / (L - 1 - c_1/L - ... - c_m/L**m)."""
    cs = tuple(Fraction(c) for c in coeffs)

    def f(m, x):
        L = _log(m, x)
        tail = m.num(0)
        for c in reversed(cs):
            tail = (tail + m.const(c)) / L
        den = L - 1 - tail
        m.positive(den, f"denominator of {ident}")
        return x / den
    if description is None:
        terms = " ".join(f"- {_fmt(c)}/log(x)^{j}" for j, c in enumerate(cs, 1))
        description = f"x / (log x - 1 {terms})".replace("  ", " ").replace("1 )", "1)")
    return _fn(ident, "rational", cs, description, f, lo=1)


def panaitopol(m_terms: int, ident: Optional[str] = None) -> BoundFunction:
    return rational(panaitopol_coeffs(m_terms), ident or f"pan:m={m_terms}")


def x_over_log() -> BoundFunction:
    return _fn("eq1.7-rhs", "log-series", (1,), "x / log x",
               lambda m, x: x / _log(m, x), lo=1)


def log_series(n: int, ident: Optional[str] = None) -> BoundFunction:
    if n < 1:
        raise ValueError("n must be positive")
    terms = " + ".join(f"{math.factorial(k - 1)} x/log(x)^{k}" for k in range(1, n + 1))
    return _fn(ident or f"xlog:m={n}", "log-series", (n,), terms,
               lambda m, x: _log_series(m, x, _log(m, x), n), lo=1)


def decay_term(scale: Fraction, ident: str, description: str) -> BoundFunction:
    def f(m, x):
        return m.const(scale) * _c(m) * x * _decay(m, _log(m, x))
    return _fn(ident, "decay", (scale,), description, f, lo=1)


def a_n(n: int) -> BoundFunction:
    def f(m, x):
        L = _log(m, x)
        pre = m.sqrt(m.num(8)) / m.sqrt(m.pi * m.sqrt(m.const(R)))
        return pre * m.rpow(L, str(Fraction(4 * n + 1, 4))) * m.exp(-m.sqrt(L / m.const(R)))
    return _fn(f"a:n={n}", "a", (n,),
               f"sqrt(8)/sqrt(pi sqrt R) log(x)^({n}+1/4) exp(-sqrt(log(x)/R))", f, lo=1)


def li_minus_decay() -> BoundFunction:
    def f(m, x):
        return m.li(x) - _c(m) * x * _decay(m, _log(m, x))
    return _fn("eq4.4", "li-decay", (-1,), "li(x) - c x / (log(x)^(3/4) exp(sqrt(log(x)/R)))", f, lo=1)


def li_plus_decay() -> BoundFunction:
    def f(m, x):
        return m.li(x) + _c(m) * x * _decay(m, _log(m, x)) + _d(m)
    return _fn("eq4.5", "li-decay", (1,),
               "li(x) + c x / (log(x)^(3/4) exp(sqrt(log(x)/R))) - li(2) + 2/log 2", f, lo=1)


def series_minus_decay(n: int) -> BoundFunction:
    def f(m, x):
        L = _log(m, x)
        return _log_series(m, x, L, n + 1) - _c(m) * x * _decay(m, L)
    return _fn(f"eq4.7:n={n}", "series-decay", (n, -1),
               f"sum_(k<={n + 1}) (k-1)! x/log(x)^k - c x / (log(x)^(3/4) exp(sqrt(log(x)/R)))",
               f, lo=1)


def series_upper(n: int) -> BoundFunction:
    fac = math.factorial(n)

    def f(m, x):
        L = _log(m, x)
        out = _log_series(m, x, L, n)
        out = out + fac * m.sqrt(x) / m.log(m.num(2)) ** (n + 1)
        out = out + fac * 2 ** (n + 1) * x / L ** (n + 1)
        return out + _c(m) * x * _decay(m, L) + _d(m)
    return _fn(f"eq4.8:n={n}", "series-decay", (n, 1),
               f"sum_(k<={n}) (k-1)! x/log(x)^k + {fac} sqrt(x)/log(2)^{n + 1} "
               f"+ {fac * 2 ** (n + 1)} x/log(x)^{n + 1} + c x/(log(x)^(3/4) exp(sqrt(log(x)/R))) + d",
               f, lo=1)


def series_lower_a(n: int, a) -> BoundFunction:
    a = Fraction(a)
    fac = math.factorial(n)

    def f(m, x):
        L = _log(m, x)
        coef = fac - _c(m) * m.rpow(m.const(a), str(Fraction(4 * n + 1, 4)))
        return _log_series(m, x, L, n) + coef * x / L ** (n + 1)
    return _fn(f"eq6.1:n={n},a={_fmt(a)}", "series-a", (n, a, -1),
               f"sum_(k<={n}) (k-1)! x/log(x)^k + ({fac} - c a^({n}+1/4)) x/log(x)^{n + 1}, a = {_fmt(a)}",
               f, lo=1)


def series_upper_a(n: int, a) -> BoundFunction:
    a = Fraction(a)
    fac = math.factorial(n)

    def f(m, x):
        L = _log(m, x)
        Ln = L ** (n + 1)
        inner = (fac * Ln / (m.sqrt(x) * m.log(m.num(2)) ** (n + 1)) + fac * 2 ** (n + 1)
                 + _c(m) * m.rpow(m.const(a), str(Fraction(4 * n + 1, 4))) + _d(m) * Ln / x)
        return _log_series(m, x, L, n) + x / Ln * inner
    return _fn(f"eq6.2:n={n},a={_fmt(a)}", "series-a", (n, a, 1),
               f"sum_(k<={n}) (k-1)! x/log(x)^k + x/log(x)^{n + 1} ({fac} log(x)^{n + 1}/(sqrt(x) log(2)^{n + 1})"
               f" + {fac * 2 ** (n + 1)} + c a^({n}+1/4) + d log(x)^{n + 1}/x), a = {_fmt(a)}",
               f, lo=1)


def rh_lower() -> BoundFunction:
    def f(m, x):
        return m.li(x) - m.sqrt(x) * _log(m, x) / (8 * m.pi)
    return _fn("eq3.6-lhs", "rh-lower", (), "li(x) - sqrt(x) log(x) / (8 pi)", f, lo=1)


def h_fn() -> BoundFunction:
    def f(m, x):
        L = _log(m, x)
        r = m.pi * m.sqrt(x)
        return -(L ** 8) + r * (208 * L ** 2 + 96 * L + 144)
    return _fn("eq3.6-h", "h", (),
               "-log(x)^8 + pi sqrt(x) (208 log(x)^2 + 96 log x + 144)", f, lo=1)


def ram() -> BoundFunction:
    def f(m, x):
        xe = x / m.e
        le = m.log(xe)
        m.positive(le, "log(x/e)")
        lx = m.li(x)
        return (m.li(xe) - m.const("2.1204") * m.sqrt(xe) / le
                - lx * lx * _log(m, x) / (m.e * x))
    return _fn("ram", "ram", (),
               "li(x/e) - 2.1204 sqrt(x/e)/log(x/e) - li(x)^2 log(x)/(e x)", f, lo=math.e)


def ram_deriv() -> BoundFunction:
    def f(m, t):
        L = _log(m, t)
        le = L - 1
        m.positive(le, "log(t/e)")
        num = m.li(t) * le - t
        first = num * num / (m.e * t * t * le)
        second = m.const("1.0602") * (L - 3) / (m.e * le * le * m.sqrt(t / m.e))
        return first - second
    return _fn("ram-deriv", "ram-deriv", (),
               "(li(t) log(t/e) - t)^2/(e t^2 log(t/e)) - 1.0602 (log t - 3)/(e log(t/e)^2 sqrt(t/e))",
               f, lo=math.e)


def _xi(m, L, n: int):
    out = m.num(1)
    for k in range(2, n + 1):
        out = out * (1 - (k - 1) / L) ** (2 ** (n - k))
    return out


def xi(n: int) -> BoundFunction:
    if n < 1:
        raise ValueError("n must be positive")
    return _fn(f"xi:n={n}", "xi", (n,), f"prod_(k<={n}) (1 - (k-1)/log x)^(2^({n}-k))",
               lambda m, x: _xi(m, _log(m, x), n), lo=1)


def rnxi_log_coef(n: int) -> BoundFunction:
    """log of e^n / Xi_n(x) * (x / log x)^(2^n - 1); increasing for large x."""
    if n < 1:
        raise ValueError("n must be positive")

    def f(m, x):
        L = _log(m, x)
        lx = n - m.log(m.positive(_xi(m, L, n), "Xi_n")) if n > 1 else m.num(n)
        return lx + (2 ** n - 1) * (L - m.log(L))
    return _fn(f"rnxi-coef:n={n}", "rnxi", (n,),
               f"log(e^{n} / Xi_{n}(x) (x/log x)^(2^{n}-1))", f, lo=1)


def prop41_rhs() -> BoundFunction:
    return decay_term(Fraction(1, 3), "prop4.1-rhs",
                      "sqrt(2)/sqrt(pi sqrt R) x / (log(x)^(3/4) exp(sqrt(log(x)/R)))")


def decay_c() -> BoundFunction:
    return decay_term(Fraction(1), "decay-c", "c x / (log(x)^(3/4) exp(sqrt(log(x)/R))), c = 3 sqrt 2/sqrt(pi sqrt R)")


# -- J-function ----------------------------------------------------------------

@dataclass(frozen=True)
class BoundSpec:
    """theta-envelope parameters with the anchor values at x1."""

    k: int
    eta: Fraction
    x1: int
    pi_x1: int
    theta_x1: Enclosure

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be positive")
        if self.x1 < 2:
            raise ValueError("x1 must be at least 2")

    def envelope_holds_at_x1(self, precision: int = 128) -> bool:
        """|theta(x1) - x1| < |eta| x1 / log(x1)**k, decided with enclosures."""
        m = IvMath(precision)
        x = m.num(self.x1)
        env = m.const(abs(self.eta)) * x / m.log(x) ** self.k
        th = to_iv(m.ctx, self.theta_x1)
        dev_hi = max(abs(th.a - x.a), abs(th.b - x.b))
        return bool(dev_hi.b < env.a)


def bound_spec(k: int, eta, x1: int, cfg=None, jobs: int = 1) -> BoundSpec:
    """Build a BoundSpec, sieving for the anchors unless x1 is a tabulated point."""
    eta = Fraction(eta)
    x1 = int(x1)
    if x1 in LARGE_ANCHORS:
        pi_x1, theta = _large_anchor(x1)
        return BoundSpec(k, eta, x1, pi_x1, theta)
    from ..sieve import DEFAULT_CONFIG, stats_at
    st = stats_at(x1, cfg or DEFAULT_CONFIG, jobs=jobs)
    lo, hi = st.theta_bounds()
    ctx = iv_context(128)
    th = ctx.mpf([to_iv(ctx, lo).a, to_iv(ctx, hi).b])
    return BoundSpec(k, eta, x1, st.pi, Enclosure.from_iv(th))


def _large_anchor(x1: int):
    """pi(x1) and an enclosure of theta(x1) from tabulated values.

    The lower end of theta comes from the envelope 580115 x / log(x)**5.
    """
    a = LARGE_ANCHORS[x1]
    ctx = iv_context(192)
    x = ctx.mpf(x1)
    lo = x - 580115 * x / ctx.log(x) ** 5
    return a["pi"], Enclosure.from_iv(ctx.mpf([lo.a, a["theta_hi"]]))


def j_function(spec: BoundSpec) -> BoundFunction:
    k, eta, x1 = spec.k, spec.eta, spec.x1

    def f(m, x):
        L = _log(m, x)
        X1 = m.num(x1)
        th = m.num(spec.theta_x1)
        e = m.const(eta)
        out = spec.pi_x1 - th / m.log(X1) + x / L + e * x / L ** (k + 1)
        out = out + (m.intlog(2, x) - m.intlog(2, X1))
        return out + e * (m.intlog(k + 2, x) - m.intlog(k + 2, X1))
    return _fn(f"J:k={k},eta={_fmt(eta)},x1={x1}", "J", (k, eta, x1),
               f"pi(x1) - theta(x1)/log x1 + x/log x + eta x/log(x)^{k + 1}"
               f" + int_x1^x (1/log(t)^2 + eta/log(t)^{k + 2}) dt, eta = {_fmt(eta)}, x1 = {x1}",
               f, lo=1)


def _fmt(v: Fraction) -> str:
    v = Fraction(v)
    if v.denominator == 1:
        return str(v.numerator)
    d = v.denominator
    t = 0
    while d % 2 == 0:
        d //= 2
        t += 1
    f5 = 0
    while d % 5 == 0:
        d //= 5
        f5 += 1
    if d != 1:
        return f"{v.numerator}/{v.denominator}"
    digits = max(t, f5)
    s = f"{abs(v.numerator) * 10**digits // v.denominator:0{digits + 1}d}"
    out = (s[:-digits] + "." + s[-digits:]).rstrip("0").rstrip(".")
    return ("-" if v < 0 else "") + out
