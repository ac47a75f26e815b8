import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from oracles import li_quad
from primebounds.analytic import (Enclosure, IvMath, Verdict, certify_less, eval, li,
                                  panaitopol_coeffs, resolve, table)
from primebounds.analytic.registry import ENTRIES, parse_ident
from primebounds.certify import Monotonicity, certify_monotone
from primebounds.errors import ConfigurationError, DomainError
from primebounds.sieve import stats_at

R = Fraction("5.573412")
EXAMPLES = [ex for _, ex, _ in table()]


def mpf_of(v):
    return mpmath.mpf(v)


# -- li ---------------------------------------------------------------------------

def test_li2_anchor():
    enc = li(2, 128)
    assert enc.width < mpmath.mpf(10) ** -20
    # the leading digits are 1.04516...
    assert Fraction("1.04516") <= enc.lo_fraction() and enc.hi_fraction() < Fraction("1.04517")


def test_li_difference_matches_quadrature():
    ref = li_quad(10) - li_quad(2)
    got = li(10, 128)
    base = li(2, 128)
    with mpmath.workdps(40):
        diff_lo = mpf_of(got.lo) - mpf_of(base.hi)
        diff_hi = mpf_of(got.hi) - mpf_of(base.lo)
        assert diff_lo - mpmath.mpf(10) ** -12 <= ref <= diff_hi + mpmath.mpf(10) ** -12


@pytest.mark.parametrize("x", [Fraction(1, 2), 2, 3, 10, 1000, 10**6, 10**12, 10**19])
def test_li_against_quadrature(x):
    ref = li_quad(x) if x != Fraction(1, 2) else None
    enc = li(x, 128)
    if ref is None:
        with mpmath.workdps(40):
            ref = mpmath.li(mpmath.mpf(1) / 2)
    with mpmath.workdps(40):
        tol = mpmath.mpf(10) ** -25 * max(1, abs(ref))
        assert mpf_of(enc.lo) - tol <= ref <= mpf_of(enc.hi) + tol


def test_li2_minus_two_over_log2_is_negative():
    m = IvMath(128)
    v = m.li(m.num(2)) - 2 / m.log(m.num(2))
    assert v.b < 0
    assert -v.b > 0.04


def test_li_width_bound():
    for x in (3, 100, 10**6, 10**19):
        for prec in (64, 128, 256):
            enc = li(x, prec)
            assert enc.width <= mpmath.mpf(2) ** (4 - prec) * max(1, abs(enc.mid))


@given(st.fractions(min_value=Fraction(101, 100), max_value=10**20))
@settings(max_examples=60, deadline=None)
def test_li_fixed_point_path_overlaps_interval_series(x):
    from primebounds.analytic.enclosure import iv_context, to_iv
    from primebounds.analytic.li import _li_point
    ctx = iv_context(128)
    slow = _li_point(ctx, to_iv(ctx, x))
    fast = li(x, 128)
    assert fast.lo <= slow.b and slow.a <= fast.hi
    assert fast.width <= 4 * (slow.b - slow.a) + mpmath.mpf(2) ** -120 * abs(fast.mid)


def test_li_singularity():
    with pytest.raises(DomainError):
        li(1)
    with pytest.raises(DomainError):
        li(0)


@pytest.mark.parametrize("x", [10, 100, 10**6])
def test_li_derivative(x):
    h = Fraction(1, 10**6)
    a, b = li(x + h, 256), li(x - h, 256)
    with mpmath.workdps(60):
        hm = mpmath.mpf(h.numerator) / h.denominator
        lo = (mpf_of(a.lo) - mpf_of(b.hi)) / (2 * hm)
        hi = (mpf_of(a.hi) - mpf_of(b.lo)) / (2 * hm)
        target = 1 / mpmath.log(x)
        # centered difference error: h^2/6 max |li'''| <= h^2 (for x >= 10)
        trunc = hm ** 2
        assert lo - trunc <= target <= hi + trunc


# -- Panaitopol coefficients ----------------------------------------------------------

def test_panaitopol_first_terms():
    assert panaitopol_coeffs(1) == [1]
    assert panaitopol_coeffs(2) == [1, 3]
    assert panaitopol_coeffs(5) == [1, 3, 13, 71, 461]


def test_panaitopol_sixth_coefficient_from_recurrence():
    # direct evaluation: k_6 = 6*6! - (1!k_5 + 2!k_4 + 3!k_3 + 4!k_2 + 5!k_1)
    direct = 6 * 720 - (1 * 461 + 2 * 71 + 6 * 13 + 24 * 3 + 120 * 1)
    assert direct == 3447
    assert panaitopol_coeffs(6)[-1] == direct


@given(st.integers(1, 30))
@settings(max_examples=30, deadline=None)
def test_panaitopol_recurrence(m):
    k = panaitopol_coeffs(m)
    assert len(k) == m and all(v > 0 for v in k)
    assert k[-1] + sum(math.factorial(j) * k[m - 1 - j] for j in range(1, m)) == m * math.factorial(m)


# -- bound functions -----------------------------------------------------------------

@pytest.mark.parametrize("ident", EXAMPLES)
@pytest.mark.parametrize("x", ["100", "1e6", "1e12"])
def test_enclosures_nest(ident, x):
    lo = eval(ident, x, 64)
    hi = eval(ident, x, 256)
    assert lo.lo <= hi.lo <= hi.hi <= lo.hi
    assert hi.width <= lo.width


@given(st.sampled_from(["li", "eq1.7-rhs", "thm1.1-rhs", "eq4.11-rhs", "ram", "xi:n=2", "eq4.8:n=2"]),
       st.integers(100, 10**15))
@settings(max_examples=60, deadline=None)
def test_enclosure_contains_high_precision_value(ident, x):
    f = resolve(ident)
    coarse = eval(f, x, 64)
    m = IvMath(512)
    fine = f(m, m.num(x))
    assert coarse.lo <= fine.a and fine.b <= coarse.hi


def test_ram_anchor():
    enc = eval("ram", Fraction("1.62e12"), 128)
    assert enc.lo > 85.86
    assert enc.width < 1e-2


def test_j_at_anchor_reduces_to_closed_form():
    x1 = 10**13
    f = resolve(f"J:k=5,eta=-580115,x1={x1}")
    m = IvMath(192)
    got = f(m, m.num(x1))
    X = m.num(x1)
    L = m.log(X)
    assert f.params == (5, Fraction(-580115), x1)
    theta_lo = X - 580115 * X / L ** 5
    th = m.ctx.mpf([theta_lo.a, m.num(9999996988294).b])
    want = 346065536839 - th / L + X / L - 580115 * X / L ** 6
    # same expression, different evaluation order: endpoints agree to rounding
    tol = mpmath.mpf(10) ** -30 * abs(want.b)
    assert abs(got.a - want.a) <= tol and abs(got.b - want.b) <= tol


def test_j_sandwich_small_spec():
    low = resolve("J:k=4,eta=-100,x1=70111")
    up = resolve("J:k=4,eta=100,x1=70111")
    for x in (70111, 10**5, 10**6, 5 * 10**6):
        pi = stats_at(x).pi
        assert eval(low, x).hi < pi < eval(up, x).lo


def test_envelope_turning_point():
    # L^(n+1/4) exp(-sqrt(L/R)) turns at L = (4n+1)^2 R / 4
    n = 1
    turn = (4 * n + 1) ** 2 * R / 4
    f = resolve("a:n=1")
    below = certify_monotone(f, math.floor(math.exp(float(turn) - 2)), math.floor(math.exp(float(turn) - 0.5)))
    above = certify_monotone(f, math.ceil(math.exp(float(turn) + 0.5)), math.ceil(math.exp(float(turn) + 2)))
    assert below.verdict is Monotonicity.INCREASING
    assert above.verdict is Monotonicity.DECREASING


def test_panaitopol_denominator_domain_error():
    # log x - 1 - 1/log x - 3/log^2 x vanishes near x = 7.3
    f = resolve("thm1.1-rhs")
    with pytest.raises(DomainError, match="denominator"):
        eval(f, 5)


def test_domain_below_one():
    with pytest.raises(DomainError):
        eval("eq1.7-rhs", 1)


# -- certify_less -------------------------------------------------------------------

def test_certify_less_li_beats_x_over_log():
    c = certify_less("eq1.7-rhs", "li", 10**6)
    assert c.verdict is Verdict.PROVEN_LESS
    # oracle: li(1e6) ~ 78627.5 vs 1e6 / log 1e6 ~ 72382.4
    assert abs(float(c.rhs.mid) - float(li_quad(10**6))) < 1e-6
    assert abs(float(c.lhs.mid) - 1e6 / math.log(1e6)) < 1e-6


@given(st.sampled_from(EXAMPLES[:12]), st.integers(100, 10**9))
@settings(max_examples=40, deadline=None)
def test_certify_less_is_irreflexive(ident, x):
    c = certify_less(ident, ident, x)
    assert c.verdict is not Verdict.PROVEN_LESS


def test_rh_inequality_anchor():
    c = certify_less("eq3.6-rhs", "eq3.6-lhs", 10**12)
    assert c.verdict is Verdict.PROVEN_LESS


def test_certify_less_reports_geq():
    # li(x) - li(2) < li(x), so the reverse comparison is proven false
    c = certify_less("li", "li-offset", 10**6)
    assert c.verdict is Verdict.PROVEN_GEQ


# -- identifiers ------------------------------------------------------------------------

@pytest.mark.parametrize("bad", ["nope", "xi", "xi:n=0", "xi:m=3", "J:k=4,eta=0,x1=70111",
                                 "pan:m=1.5", "xi:n=3,n=4", "eq6.1:n=6,a=-1"])
def test_bad_identifiers_rejected(bad):
    with pytest.raises(ConfigurationError):
        parse_ident(bad)


def test_every_family_has_an_example():
    for name, entry in ENTRIES.items():
        assert parse_ident(entry.example).name == name


def test_enclosure_format_is_outward():
    enc = Enclosure.from_iv(IvMath(128).num(Fraction(1, 3)))
    lo, hi = enc.format(10)
    assert Fraction(lo) <= Fraction(1, 3) <= Fraction(hi)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_log_power_expansion_remainder(n):
    """li(x) - sum_(k<=n) (k-1)! x / log^k x equals n! int_2^x dt / log^(n+1) t plus the
    boundary terms at 2; the remainder is positive and below (n+1)! int ... by quadrature."""
    x = 10**6
    series = eval(f"xlog:m={n}", x, 128)
    lix = li(x, 128)
    with mpmath.workdps(40):
        integral = mpmath.quad(lambda t: 1 / mpmath.log(t) ** (n + 1), [2, 100, 10**4, x])
        at2 = li_quad(2) - sum(math.factorial(k - 1) * 2 / mpmath.log(2) ** k for k in range(1, n + 1))
        want = math.factorial(n) * integral + at2
        got_lo = mpf_of(lix.lo) - mpf_of(series.hi)
        got_hi = mpf_of(lix.hi) - mpf_of(series.lo)
        tol = mpmath.mpf(10) ** -15 * abs(want)
        assert got_lo - tol <= want <= got_hi + tol
        # and it is bracketed by multiples of the next term of the expansion
        nxt = math.factorial(n) * x / mpmath.log(x) ** (n + 1)
        assert nxt < want < (n + 1) * nxt
