import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from oracles import PrimeTable
from primebounds.errors import CheckpointError, ConfigurationError, MonotonicityError
from primebounds.verify import (CheckKind, Point, make_task, strip_wall_time, theta_envelope_check,
                                verify_lower, verify_pi, verify_ramanujan, verify_rnxi, verify_upper)
from primebounds.verify.points import floor_times_exp

TABLE = PrimeTable(10**6)
SMALL_BLOCK = 1 << 16


def mp(x: Point):
    return mpmath.mpf(x.q.numerator) / x.q.denominator * mpmath.e ** x.shift


def fr(v):
    return Fraction(v)


# -- points ---------------------------------------------------------------------------

def test_point_parse_and_text():
    p = Point.parse("38358837683*e")
    assert (p.q, p.shift) == (38358837683, 1)
    assert p.text() == "38358837683*e"
    assert Point.parse("5*e^2").shift == 2
    assert Point.parse("1e9") == Point(10**9)
    assert Point.parse("2.5").text() == "2.5"
    assert Point.from_key(p.key()) == p


def test_point_floor_and_order():
    with mpmath.workdps(50):
        assert Point(38358837683, 1).floor() == int(mpmath.floor(38358837683 * mpmath.e))
    assert Point(1, 1) < Point(3) and Point(1, 1) > Point(Fraction(2718, 1000))
    assert Point(3, -1) < Point(Fraction(11037, 10000)) and Point(3, -1) > Point(Fraction(11036, 10000))
    assert sorted([Point(3), Point(1, 1), Point(1, -1)]) == [Point(1, -1), Point(1, 1), Point(3)]


@given(st.lists(st.integers(1, 10**15), min_size=1, max_size=30), st.integers(-3, 3))
@settings(max_examples=60, deadline=None)
def test_floor_times_exp_matches_high_precision(qs, k):
    got = floor_times_exp(np.array(qs, dtype=np.int64), k)
    with mpmath.workdps(60):
        want = [int(mpmath.floor(q * mpmath.e ** k)) for q in qs]
    assert list(map(int, got)) == want


@given(st.fractions(min_value=1, max_value=10**12), st.integers(-2, 2),
       st.fractions(min_value=1, max_value=10**12), st.integers(-2, 2))
@settings(max_examples=80, deadline=None)
def test_point_comparison_matches_high_precision(q1, k1, q2, k2):
    a, b = Point(q1, k1), Point(q2, k2)
    with mpmath.workdps(80):
        va, vb = mp(a), mp(b)
    if va == vb:
        return
    assert (a < b) == (va < vb)


# -- tasks --------------------------------------------------------------------------------

def test_task_validation():
    with pytest.raises(ConfigurationError):
        make_task(CheckKind.LOWER, 100, 10, "eq1.7-rhs")
    with pytest.raises(ConfigurationError):
        make_task(CheckKind.LOWER, 1, 10, "eq1.7-rhs")
    with pytest.raises(ConfigurationError):
        make_task(CheckKind.LOWER, 10, 100, "eq1.7-rhs", partitions=0)
    with pytest.raises(ConfigurationError):
        make_task(CheckKind.LOWER, 10, 100, "eq1.7-rhs", strategy="guess")
    with pytest.raises(ConfigurationError):
        verify_lower("nope", 10, 100)


def test_jump_requires_monotonicity():
    # x / log^3 x decreases below e^3, so the jump argument is not available there
    with pytest.raises(MonotonicityError):
        verify_upper("env:eta=1,k=3", 3, 30)
    rep = verify_upper("env:eta=1,k=3", 3, 30, strategy="hybrid")
    assert rep.status in ("PASS", "FAIL")


# -- pi bounds against an independent piecewise oracle ---------------------------------

def _pieces(a, b):
    """(t, r, pi(t), closed) for the pieces of [a, b] between consecutive primes."""
    ps = [p for p in TABLE.primes if a < p <= b]
    lefts = [a] + ps
    rights = ps + [b]
    return [(t, r, TABLE.pi(t), i == len(lefts) - 1) for i, (t, r) in enumerate(zip(lefts, rights))]


def _x_over_log(x):
    return x / mpmath.log(x)


def test_lower_sweep_matches_exhaustive_oracle():
    """pi(x) > x/log x on [3, 1e5]: the set of failing pieces equals the oracle's."""
    rep = verify_lower("eq1.7-rhs", 3, 10**5)
    want = set()
    with mpmath.workdps(40):
        for t, r, P, closed in _pieces(3, 10**5):
            # x / log x increases for x > e; on [t, r) its supremum is at r
            top = _x_over_log(mpmath.mpf(r))
            if top > P or (closed and top >= P):
                want.add(t)
    got = set()
    for f in rep.failures:
        t = max(p for p in [3] + TABLE.primes if p <= f.x.q)
        got.add(t)
    assert got == want and max(want) < 17
    assert not rep.unresolved


def test_lower_from_17_passes():
    rep = verify_lower("eq1.7-rhs", 17, 10**6)
    assert rep.passed and rep.exit_code == 0


def test_integer_sweep_agrees_with_jump_verdict():
    """Exhaustive integer check of pi(n) > n / log n, plus continuity on each piece."""
    with mpmath.workdps(30):
        bad = [n for n in range(3, 10**5 + 1) if TABLE.pi(n) <= _x_over_log(mpmath.mpf(n))]
    assert max(bad) < 17
    assert verify_lower("eq1.7-rhs", 17, 10**5).passed


def test_upper_li():
    rep = verify_upper("li", 2, 10**6)
    assert rep.passed


def test_upper_j_function():
    rep = verify_upper("J:k=4,eta=100,x1=70111", 70111, 2 * 10**6)
    assert rep.passed


def test_upper_series_hybrid_and_jump_agree():
    a = verify_upper("eq4.8:n=2", 4, 10**6, strategy="hybrid")
    assert a.passed
    b = verify_upper("eq4.8:n=2", 100, 10**6)
    assert b.passed


def test_hybrid_finds_same_failures_as_jump():
    j = verify_lower("eq1.7-rhs", 3, 2000)
    h = verify_lower("eq1.7-rhs", 3, 2000, strategy="hybrid")
    assert {math.floor(f.x.q) for f in j.failures} and len(j.failures) == len(h.failures)


def test_reported_failures_are_real():
    """Every failure's witness really violates the inequality (60-digit recomputation)."""
    rep = verify_lower("thm1.1-rhs", 6 * 10**7, 65405887)
    assert rep.failures
    with mpmath.workdps(60):
        for f in rep.failures:
            x = mp(f.x)
            L = mpmath.log(x)
            bound = x / (L - 1 - 1 / L - 3 / L ** 2)
            P = int(f.lhs.lo)
            assert P == int(f.lhs.hi)
            assert bound >= P
            assert f.rhs.lo <= bound <= f.rhs.hi
    assert rep.failures[-1].x < 65405887


def test_pass_summary_is_the_closest_call():
    rep = verify_lower("eq1.7-rhs", 17, 10**5)
    tsv = rep.to_tsv()
    line = [ln for ln in tsv.splitlines() if ln.startswith("PASS-SUMMARY")]
    assert len(line) == 1
    status, x, lo, hi, rlo, rhi = line[0].split("\t")
    assert Fraction(lo) > Fraction(rhi)


# -- report format --------------------------------------------------------------------

def test_tsv_layout():
    rep = verify_lower("eq1.7-rhs", 3, 100)
    lines = rep.to_tsv().splitlines()
    assert lines[0] == "# kind\tLowerBoundPi"
    assert lines[-2] == "# status\tFAIL" and lines[-1].startswith("# wall_time\t")
    body = [ln for ln in lines if not ln.startswith("#")]
    for ln in body:
        fields = ln.split("\t")
        assert fields[0] in ("FAIL", "UNRESOLVED", "PASS-SUMMARY") and len(fields) == 6
    assert "# wall_time" not in strip_wall_time(rep.to_tsv())


# -- partition independence and resume ----------------------------------------------------

@pytest.mark.parametrize("kind", ["ramanujan", "lower"])
def test_partition_independence(kind):
    def run(parts, jobs=1):
        if kind == "ramanujan":
            r = verify_ramanujan(10**4, 10**6, partitions=parts, jobs=jobs, block=SMALL_BLOCK)
        else:
            r = verify_lower("eq1.7-rhs", 3, 10**6, partitions=parts, jobs=jobs, block=SMALL_BLOCK)
        return strip_wall_time(r.to_tsv())
    ref = run(1)
    assert run(4) == ref
    assert run(16) == ref
    assert run(16, jobs=2) == ref


class Stop(Exception):
    pass


def _halt_after(n):
    def progress(done, total, x):
        if done == n:
            raise Stop
    return progress


@pytest.mark.parametrize("kind", ["ramanujan", "lower", "rnxi"])
def test_resume_gives_identical_report(tmp_path, kind):
    ck = tmp_path / "job.ckpt"

    def run(**kw):
        if kind == "ramanujan":
            return verify_ramanujan(10**4, 10**6, block=SMALL_BLOCK, **kw)
        if kind == "rnxi":
            return verify_rnxi(2, 100, 10**6, block=SMALL_BLOCK, **kw)
        return verify_lower("eq1.7-rhs", 3, 10**6, block=SMALL_BLOCK, **kw)
    ref = strip_wall_time(run().to_tsv())
    with pytest.raises(Stop):
        run(checkpoint=ck, progress=_halt_after(5))
    line = ck.read_text().split()
    assert len(line) == 4 and line[2:] == ["0", "0"]
    resumed = run(checkpoint=ck, partitions=3)
    assert resumed.resumed_from == str(ck)
    assert strip_wall_time(resumed.to_tsv()) == ref
    # a finished job re-run with its checkpoint reproduces the report
    again = run(checkpoint=ck)
    assert strip_wall_time(again.to_tsv()) == ref


def test_checkpoint_from_other_task_is_refused(tmp_path):
    ck = tmp_path / "job.ckpt"
    with pytest.raises(Stop):
        verify_ramanujan(10**4, 10**6, block=SMALL_BLOCK, checkpoint=ck, progress=_halt_after(2))
    with pytest.raises(CheckpointError):
        verify_ramanujan(10**4, 2 * 10**6, block=SMALL_BLOCK, checkpoint=ck)
    (tmp_path / "job.ckpt.state").write_text("{not json")
    with pytest.raises(CheckpointError):
        verify_ramanujan(10**4, 10**6, block=SMALL_BLOCK, checkpoint=ck)


# -- Ramanujan-type checks against an integer oracle -----------------------------------------

def _integer_failures(lo, hi, n):
    """Integers x in [lo, hi] with pi(x)^(2^n) >= e^n/Xi_n(x) (x/log x)^(2^n-1) pi(x/e^n)."""
    out = set()
    with mpmath.workdps(60):
        e_n = mpmath.e ** n
        for x in range(lo, hi + 1):
            L = mpmath.log(x)
            xi = mpmath.mpf(1)
            for k in range(2, n + 1):
                xi *= (1 - (k - 1) / L) ** (2 ** (n - k))
            rhs = e_n / xi * (x / L) ** (2 ** n - 1) * TABLE.pi(int(mpmath.floor(x / e_n)))
            if TABLE.pi(x) ** (2 ** n) >= rhs:
                out.add(x)
    return out


def _intervals(rep):
    return [(f.x, f.end) for f in rep.failures]


def _check_against_integers(rep, lo, hi, n):
    truth = _integer_failures(lo, hi, n)
    ivs = _intervals(rep)
    covered_sure, covered_maybe = set(), set()
    for start, (end_lo, end_hi) in ivs:
        a = math.ceil(start.q) if start.shift == 0 else start.floor() + 1
        for x in range(a, end_hi.floor() + 1):
            if Point(x) < end_lo:
                covered_sure.add(x)
            if Point(x) <= end_hi:
                covered_maybe.add(x)
    assert covered_sure <= truth
    assert truth <= covered_maybe
    return truth


def test_ramanujan_small_range_against_integer_oracle():
    rep = verify_ramanujan(10**4, 10**5)
    assert rep.exit_code == 1 and not rep.unresolved
    truth = _check_against_integers(rep, 10**4, 10**5, 1)
    assert truth


def test_rnxi_two_small_range_against_integer_oracle():
    rep = verify_rnxi(2, 100, 10**5)
    assert rep.failures and not rep.unresolved
    assert rep.task.label == "RnXi(2)"
    _check_against_integers(rep, 100, 10**5, 2)


def test_rnxi_one_is_ramanujan():
    a = verify_rnxi(1, 10**4, 10**5)
    b = verify_ramanujan(10**4, 10**5)
    assert strip_wall_time(a.to_tsv()) == strip_wall_time(b.to_tsv())
    assert a.task.kind is CheckKind.RAMANUJAN


def test_ramanujan_failure_sides_are_consistent():
    rep = verify_ramanujan(10**4, 2 * 10**4)
    for f in rep.failures:
        assert f.lhs.lo == f.lhs.hi                 # pi(x)^2 is an exact integer
        assert f.rhs.hi <= f.lhs.lo
        assert f.x.exact and f.x.q.denominator == 1
        end_lo, end_hi = f.end
        assert f.x < end_lo or f.x == end_lo
        assert end_lo <= end_hi


def test_ramanujan_preconditions():
    with pytest.raises(ConfigurationError):
        verify_ramanujan(5, 100)
    with pytest.raises(ConfigurationError):
        verify_rnxi(0, 100, 1000)


# -- theta envelope -------------------------------------------------------------------------

def test_theta_envelope_small_range_passes():
    assert theta_envelope_check(3, 149, "eq2.5-env").passed


def test_theta_cor22_at_two():
    assert theta_envelope_check(2, 2, "cor2.2-env").passed


def test_theta_power_envelope_largest_failure():
    rep = theta_envelope_check(3, 70111, "env:eta=100,k=4")
    assert rep.failures
    last = rep.failures[-1].x
    # oracle: |theta(x) - x| at the witness, 60 digits
    with mpmath.workdps(60):
        x = mp(last)
        th = mpmath.fsum(mpmath.log(p) for p in TABLE.primes if p <= x)
        assert abs(th - x) >= 100 * x / mpmath.log(x) ** 4
    # frozen regression (confirmed by the recomputation above)
    assert last == Point(Fraction(140219, 2))
    assert theta_envelope_check(70111, 10**6, "env:eta=100,k=4").passed


def test_theta_bad_bound_is_configuration_error():
    with pytest.raises(ConfigurationError):
        theta_envelope_check(2, 100, "thm1.1-rhs")


@pytest.mark.slow
def test_rnxi_two_holds_past_the_last_ramanujan_failure_scaled():
    # stand-in for the empty range [38358837683*e, 1e10]: a 1e8-wide window starting there
    lo = Point.parse("38358837683*e")
    rep = verify_rnxi(2, lo, lo.floor() + 10**8)
    assert rep.passed and rep.breakpoints_checked > 0
