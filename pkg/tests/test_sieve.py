import math
import random
from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from oracles import PrimeTable, is_prime, trial_division_primes
from primebounds._kernel import BACKENDS
from primebounds.errors import CheckpointError, ConfigurationError
from primebounds.sieve import (Checkpoint, SieveConfig, count_primes, prime_pi_many, prime_stream,
                               primes_between, stats_at)

TABLE = PrimeTable(10**6)
ALL_BACKENDS = sorted(BACKENDS)


def test_first_primes():
    assert list(prime_stream(2, 12)) == [2, 3, 5, 7, 11]


@pytest.mark.parametrize("backend", ALL_BACKENDS)
def test_pi_million_matches_trial_division(backend):
    assert len(TABLE.primes) == 78498
    assert count_primes(10**6, backend=backend) == 78498
    got = primes_between(2, 10**6, backend=backend)
    assert got.tolist() == TABLE.primes


def test_stream_contains_the_large_counterexample_prime():
    got = list(prime_stream(38358837670, 38358837690))
    assert 38358837677 in got
    assert all(is_prime(p) for p in got)
    assert got == [n for n in range(38358837670, 38358837691) if is_prime(n)]


@given(st.integers(2, 10**6), st.integers(0, 5000))
@settings(max_examples=60, deadline=None)
def test_primes_between_windows(lo, width):
    hi = min(10**6, lo + width)
    assert primes_between(lo, hi).tolist() == [p for p in TABLE.primes if lo <= p <= hi]


@given(st.lists(st.integers(2, 10**6), min_size=1, max_size=8))
@settings(max_examples=30, deadline=None)
def test_prime_pi_many(points):
    assert prime_pi_many(points) == [TABLE.pi(x) for x in points]


def test_stats_small():
    s2 = stats_at(2)
    assert s2.pi == 1
    lo, hi = s2.theta_bounds()
    assert lo <= Fraction(math.log(2)) <= hi
    s10 = stats_at(10)
    assert s10.pi == 4
    with mpmath.workdps(40):
        ref = mpmath.log(210)
        assert mpmath.mpf(s10.theta_bounds()[0].numerator) / s10.theta_bounds()[0].denominator <= ref
        assert ref <= mpmath.mpf(s10.theta_bounds()[1].numerator) / s10.theta_bounds()[1].denominator
    assert abs(s10.theta - 5.347108) < 1e-6


def test_theta_error_bound_between_precisions():
    a = stats_at(10**6, SieveConfig(frac_bits=40))
    b = stats_at(10**6, SieveConfig(frac_bits=80))
    assert a.pi == b.pi == 78498
    assert a.theta_err <= Fraction(a.pi * 2, 2**40)
    diff = abs(Fraction(a.theta_fx, 2**40) - Fraction(b.theta_fx, 2**80))
    assert diff < a.theta_err


def test_theta_against_high_precision_sum():
    ps = trial_division_primes(20000)
    with mpmath.workdps(50):
        ref = mpmath.fsum(mpmath.log(p) for p in ps)
    s = stats_at(20000)
    lo, hi = s.theta_bounds()
    with mpmath.workdps(50):
        assert mpmath.mpf(lo.numerator) / lo.denominator <= ref <= mpmath.mpf(hi.numerator) / hi.denominator


@pytest.mark.parametrize("seg", [1 << 14, 1 << 15, 1 << 20])
def test_segment_size_independence(seg):
    ref = stats_at(3 * 10**6)
    got = stats_at(3 * 10**6, SieveConfig(segment_size=seg))
    assert got == ref


def test_jobs_independence():
    assert stats_at(5 * 10**6, jobs=3) == stats_at(5 * 10**6)


def test_identity_oracle_by_quadrature():
    """pi(x) = theta(x)/log x + int_2^x theta(t)/(t log^2 t) dt, integral done piecewise exactly."""
    rng = random.Random(20240501)
    ps = np.array(TABLE.primes, dtype=np.float64)
    with mpmath.workdps(30):
        inv = [1 / mpmath.log(p) for p in TABLE.primes]
        cum = [mpmath.mpf(0)]
        for p in TABLE.primes:
            cum.append(cum[-1] + mpmath.log(p))
        # int_a^b dt/(t log^2 t) = 1/log a - 1/log b; prefix[j] covers [p_1, p_(j+1)]
        prefix = [mpmath.mpf(0)]
        for i in range(len(inv) - 1):
            prefix.append(prefix[-1] + cum[i + 1] * (inv[i] - inv[i + 1]))
        for _ in range(100):
            x = rng.randint(10, 10**6)
            k = int(np.searchsorted(ps, x, side="right"))
            st_ = stats_at(x)
            th = mpmath.mpf(st_.theta_fx) / 2**st_.frac_bits
            err = mpmath.mpf(st_.theta_err.numerator) / st_.theta_err.denominator
            integral = prefix[k - 1] + cum[k] * (inv[k - 1] - 1 / mpmath.log(x))
            total = th / mpmath.log(x) + integral
            # theta error enters through theta(x)/log x and the integral (<= err / log 2)
            slack = err * (1 / mpmath.log(x) + 1 / mpmath.log(2)) + mpmath.mpf(10) ** -15
            assert abs(total - k) <= slack


@given(st.integers(2, 10**6 - 1), st.integers(1, 10**5))
@settings(max_examples=25, deadline=None)
def test_monotone_in_x(x, dx):
    y = min(10**6, x + dx)
    a, b = stats_at(x), stats_at(y)
    assert a.pi <= b.pi
    assert a.theta_bounds()[0] <= b.theta_bounds()[1]


def test_stats_checkpoint_resume(tmp_path):
    ck = tmp_path / "theta.ckpt"
    cfg = SieveConfig(checkpoint_interval=10**5)
    seen = []

    class Stop(Exception):
        pass

    def halt(x):
        seen.append(x)
        if len(seen) == 3:
            raise Stop
    with pytest.raises(Stop):
        stats_at(10**6, cfg, checkpoint=ck, progress=halt)
    saved = Checkpoint.load(ck)
    assert saved.x == 3 * 10**5 + 1 and saved.pi == TABLE.pi(saved.x)
    assert stats_at(10**6, cfg, checkpoint=ck) == stats_at(10**6, cfg)


def test_checkpoint_corruption_is_loud(tmp_path):
    ck = tmp_path / "bad.ckpt"
    ck.write_text("12 five 0 0\n")
    with pytest.raises(CheckpointError):
        stats_at(100, checkpoint=ck)
    ck.write_text("100 25 0 40\n")
    with pytest.raises(CheckpointError):
        stats_at(50, SieveConfig(), checkpoint=ck)
    ck.write_text("1 2 3\n")
    with pytest.raises(CheckpointError):
        list(prime_stream(2, 100, checkpoint=ck))


def test_stream_resume(tmp_path):
    ck = tmp_path / "stream.ckpt"
    cfg = SieveConfig(checkpoint_interval=1000)
    it = prime_stream(2, 10**4, cfg, checkpoint=ck)
    head = [next(it) for _ in range(300)]
    it.close()
    rest = list(prime_stream(2, 10**4, cfg, checkpoint=ck))
    done = Checkpoint.load(ck)
    assert done.x == 10**4
    # the resumed stream starts right after the last completed checkpoint block
    assert head[-1] < 2000 or rest[0] > 1000
    merged = sorted(set(head) | set(rest))
    assert merged == [p for p in TABLE.primes if p <= 10**4]


def test_argument_errors():
    with pytest.raises(ValueError):
        list(prime_stream(12, 2))
    with pytest.raises(ValueError):
        list(prime_stream(1, 10))
    with pytest.raises(ConfigurationError):
        SieveConfig(frac_bits=39)
    with pytest.raises(ConfigurationError):
        SieveConfig(segment_size=1000)


def test_word_limit_window():
    top = 2**63 - 1
    got = primes_between(top - 200, top)
    assert got.tolist() == [n for n in range(top - 200, top + 1) if _mr(n)]


def _mr(n):
    # deterministic Miller-Rabin for 64-bit integers
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True
