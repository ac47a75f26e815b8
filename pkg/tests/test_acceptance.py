"""The twelve acceptance criteria, one test each, at their stated tolerances.

conftest.py prints a CRITERION line per test at the end of the session.
Runtime limits are checked on the library calls only (oracle work is excluded);
sub-millisecond limits take the best of a few warm calls.
"""

import random
import time
from fractions import Fraction

import mpmath
import pytest

from oracles import PrimeTable
from primebounds.analytic import eval, li, panaitopol_coeffs, resolve
from primebounds.certify import (F_POLY, S_POLY, a0_holds, a1_quadratic_form_positive,
                                 certify_positive, identity_holds, threshold_A0_cert, threshold_A1)
from primebounds.sieve import SieveConfig, count_primes, prime_pi_many, stats_at
from primebounds.verify import (Point, strip_wall_time, verify_lower, verify_ramanujan,
                                verify_rnxi)


def best_of(fn, repeat=5):
    out, best = None, float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return out, best


class Clock:
    def __init__(self):
        self.total = 0.0

    def __call__(self, fn, *a, **kw):
        t = time.perf_counter()
        out = fn(*a, **kw)
        self.total += time.perf_counter() - t
        return out


def test_criterion_01_panaitopol_coefficients():
    got, dt = best_of(lambda: panaitopol_coeffs(6))
    assert dt < 1e-3
    assert got == [1, 3, 13, 71, 461, 3441]


def test_criterion_02_sieve_exactness():
    oracle = PrimeTable(10**6)
    clock = Clock()
    assert clock(count_primes, 10**6) == len(oracle.primes) == 78498
    a = clock(stats_at, 10**6, SieveConfig(frac_bits=40))
    b = clock(stats_at, 10**6, SieveConfig(frac_bits=80))
    assert a.pi == b.pi == 78498
    diff = abs(Fraction(a.theta_fx, 2**40) - Fraction(b.theta_fx, 2**80))
    assert diff <= a.theta_err
    assert clock.total < 5


def test_criterion_03_li_anchor():
    enc, dt = best_of(lambda: li(2, 128))
    assert dt < 1e-3
    assert Fraction("1.04516") <= enc.lo_fraction() and enc.hi_fraction() < Fraction("1.04517")
    assert enc.width < mpmath.mpf(10) ** -20


def test_criterion_04_polynomial_certificates():
    clock = Clock()
    s = clock(certify_positive, S_POLY, 28)
    f = clock(certify_positive, F_POLY, 9032)
    assert s.verdict and f.verdict
    assert s.recheck() and f.recheck()
    assert all(r.hi <= 28 for r in s.isolated_roots)
    assert all(r.hi <= 9032 for r in f.isolated_roots)
    assert clock(identity_holds)
    assert clock.total < 10


def test_criterion_05_ram_anchor():
    clock = Clock()
    enc = clock(eval, "ram", Fraction("1.62e12"), 128)
    assert enc.lo_fraction() > Fraction("85.86")
    assert enc.hi_fraction() - enc.lo_fraction() < Fraction(1, 100)
    assert clock.total < 1


@pytest.mark.slow
def test_criterion_06_ramanujan_counterexample():
    clock = Clock()
    rep = clock(verify_ramanujan, Fraction("3.83e10"), Fraction("3.84e10"))
    assert not rep.unresolved
    assert rep.failures
    last = rep.failures[-1]
    assert last.x == Point(38358837677)
    end_lo, end_hi = last.end
    assert end_hi < Point(38358837683)
    assert all(f.x < Point(38358837683) for f in rep.failures)
    assert clock.total < 600


@pytest.mark.slow
def test_criterion_07_thm11_desk_scale():
    clock = Clock()
    above = clock(verify_lower, "thm1.1-rhs", 65405887, 10**9)
    assert not above.failures and not above.unresolved
    below = clock(verify_lower, "thm1.1-rhs", 6 * 10**7, 65405887)
    assert below.failures
    assert clock.total < 300


@pytest.mark.slow
def test_criterion_08_thm12_desk_scale():
    clock = Clock()
    above = clock(verify_lower, "eq4.11-rhs", 10384261, 10**9)
    assert not above.failures and not above.unresolved
    below = clock(verify_lower, "eq4.11-rhs", 10**7, 10384261)
    assert below.failures
    assert clock.total < 300


def test_criterion_09_historical_thresholds():
    clock = Clock()
    assert clock(verify_lower, "eq1.7-rhs", 17, 10**7).passed
    assert clock(verify_lower, "pan:m=0", 5393, 10**7).passed
    g1 = clock(verify_lower, "g1:n=3", 88783, 10**7)
    just_below = clock(verify_lower, "g1:n=3", 88000, 88783)
    assert clock.total < 60
    assert just_below.failures
    assert g1.passed


def test_criterion_10_j_sandwich():
    rng = random.Random(70111)
    xs = sorted(rng.randint(70111, 10**8) for _ in range(100))
    low = resolve("J:k=4,eta=-100,x1=70111")
    up = resolve("J:k=4,eta=100,x1=70111")
    clock = Clock()
    pis = clock(prime_pi_many, xs)
    for x, p in zip(xs, pis):
        assert clock(eval, low, x).hi <= p <= clock(eval, up, x).lo
    assert clock.total < 60


def test_criterion_11_thresholds():
    clock = Clock()
    cert = clock(threshold_A0_cert, 4)
    assert cert.value <= 132718993
    assert clock(a0_holds, 4, 132718993)
    t = clock(threshold_A1, 6, Fraction("14.4086"))
    assert t <= 9031
    assert clock(a1_quadratic_form_positive, 6, Fraction("14.4086"), 9031)
    assert clock.total < 10


@pytest.mark.slow
def test_criterion_12_generalized_inequality():
    clock = Clock()
    one = clock(verify_rnxi, 1, 10**6, 10**7)
    ram = clock(verify_ramanujan, 10**6, 10**7)
    assert strip_wall_time(one.to_tsv()) == strip_wall_time(ram.to_tsv())
    # the stated range, taken literally
    two = clock(verify_rnxi, 2, Point.parse("38358837683*e"), 10**10)
    assert two.passed
    assert clock.total < 600
