"""|theta(x) - x| < E(x) over a range, piece by piece between primes.

On [t, r) theta is constant, so |theta - x| is largest at one of the ends:
theta - t at the left, r - theta approaching the right.  A piece passes when
that maximum (with the fixed-point accumulation error added) stays below the
enclosure of E over the whole piece.
"""

from __future__ import annotations

import time
from fractions import Fraction
from typing import Optional

import numpy as np

from ..analytic.enclosure import Enclosure, IvMath
from ..analytic.floatbox import Box, BoxMath, _frac_box
from ..analytic.registry import resolve
from ..errors import ConfigurationError, DomainError, UnresolvedError
from ..sieve import DEFAULT_CONFIG, SieveConfig, primes_between, stats_at
from .pi_checks import IV_PRECS, iv_over, iv_value, point_box
from .points import Point
from .report import CheckKind, CheckReport, CheckTask, Record

SWEEP_LIMIT = 10**8
SPLIT_DEPTH = 12


def _fx_box(mant: np.ndarray, frac_bits: int) -> tuple[np.ndarray, np.ndarray]:
    """Box around mant * 2**-F for int64 mantissas (|mant| may exceed 2**53)."""
    v = mant.astype(np.float64)
    return np.ldexp(np.nextafter(v, -np.inf), -frac_bits), np.ldexp(np.nextafter(v, np.inf), -frac_bits)


class _Theta:
    """theta at the breakpoints: base (exact mantissa) + cumulative prime terms."""

    def __init__(self, base_fx: int, base_pi: int, frac_bits: int, primes: np.ndarray):
        F = self.F = frac_bits
        self.base_fx, self.base_pi = base_fx, base_pi
        self.terms = np.rint(np.log(primes.astype(np.float64)) * 2.0**F).astype(np.int64)
        # split the running sum so it never overflows int64
        hi, lo = np.divmod(self.terms, 1 << 20)
        self.cum_hi, self.cum_lo = np.cumsum(hi), np.cumsum(lo)

    def mantissa(self, i: int) -> int:
        """Exact mantissa of theta after i primes past the base."""
        if i == 0:
            return self.base_fx
        return self.base_fx + (int(self.cum_hi[i - 1]) << 20) + int(self.cum_lo[i - 1])

    def exact(self, i: int) -> tuple[Fraction, Fraction]:
        mid = Fraction(self.mantissa(i), 2**self.F)
        err = Fraction(2 * (self.base_pi + i), 2**self.F)
        return mid - err, mid + err

    def boxes(self) -> Box:
        """Boxes for theta after 0, 1, ..., len(primes) primes."""
        F = self.F
        b_lo, b_hi = _frac_box(Fraction(self.base_fx, 2**F))
        h_lo, h_hi = _fx_box(self.cum_hi, F - 20)
        l_lo, l_hi = _fx_box(self.cum_lo, F)
        cum = Box(np.concatenate([[0.0], h_lo]), np.concatenate([[0.0], h_hi])) + \
            Box(np.concatenate([[0.0], l_lo]), np.concatenate([[0.0], l_hi]))
        err = (self.base_pi + np.arange(len(self.terms) + 1)) * 2.0 ** (1 - F)
        return (cum + Box(b_lo, b_hi)) + Box(-err, err)


def theta_envelope_check(a, b, bound, cfg: SieveConfig = DEFAULT_CONFIG, backend=None,
                         limit: int = SWEEP_LIMIT) -> CheckReport:
    """Check |theta(x) - x| < bound(x) for every real x in [a, b]."""
    t0 = time.perf_counter()
    f = resolve(bound)
    task = CheckTask(CheckKind.THETA, a, b, f)
    a, b = task.lo, task.hi
    if b.floor() > limit:
        raise ConfigurationError(f"upper end {b} exceeds the exact-sweep limit {limit}")
    try:
        f.check_domain(a.q if a.exact else Fraction(float(a)))
        iv_value(f, a, 128)
    except DomainError as exc:
        raise ConfigurationError(f"{f.ident} is not evaluable on the range: {exc}") from None
    st = stats_at(a.floor(), cfg, backend=backend)
    if b.floor() > a.floor():
        primes = primes_between(a.floor() + 1, b.floor(), cfg, backend).astype(np.int64)
    else:
        primes = np.zeros(0, dtype=np.int64)
    th = _Theta(st.theta_fx, st.pi, st.frac_bits, primes)
    pts = [a] + [Point(int(p)) for p in primes]
    n = len(pts)
    l_lo = np.empty(n)
    l_hi = np.empty(n)
    l_lo[0], l_hi[0] = point_box(a)
    l_lo[1:] = l_hi[1:] = primes.astype(np.float64)
    r_lo = np.append(l_lo[1:], point_box(b)[0])
    r_hi = np.append(l_hi[1:], point_box(b)[1])
    T = th.boxes()
    E = f(BoxMath(), Box(l_lo, r_hi))
    over = T - Box(l_lo)                      # theta - t
    under = Box(r_hi) - T                     # r - theta
    dev = np.maximum(over.hi, under.hi)
    ok = dev < E.lo
    failures, unresolved = [], []
    for i in np.flatnonzero(~ok).tolist():
        right = pts[i + 1] if i + 1 < n else b
        rec, verdict = _resolve(f, th, i, pts[i], right, i == n - 1)
        if verdict is False:
            failures.append(rec)
        elif verdict is None:
            unresolved.append(rec)
    report = CheckReport(task, n, failures, unresolved,
                         notes=[f"theta_frac_bits\t{st.frac_bits}"])
    if ok.any():
        with np.errstate(invalid="ignore", divide="ignore"):
            margin = np.where(ok, (E.lo - dev) / E.lo, np.inf)
        j = int(np.argmin(margin))
        # report the end of the piece where |theta - x| is largest (left limit at r)
        right = pts[j + 1] if j + 1 < n else b
        report.closest = _record(f, th, j, pts[j] if over.hi[j] >= under.hi[j] else right)
    report.wall_time = time.perf_counter() - t0
    return report


def _record(f, th: _Theta, i: int, x: Point, prec: int = 128) -> Record:
    m = IvMath(prec)
    lo, hi = th.exact(i)
    tv = m.ctx.mpf([m.num(lo).a, m.num(hi).b])
    return Record(x, Enclosure.from_iv(abs(tv - x.iv(m))), Enclosure.from_iv(iv_value(f, x, prec)))


def _fails_at(f, th: _Theta, i: int, x: Point) -> Optional[bool]:
    lo, hi = th.exact(i)
    for prec in IV_PRECS:
        m = IvMath(prec)
        try:
            E = iv_value(f, x, prec)
        except UnresolvedError:
            continue
        X = x.iv(m)
        # bounds for |theta - x| from explicit endpoints
        dev_lo = max((m.num(lo) - X).a, (X - m.num(hi)).a)
        dev_hi = max((m.num(hi) - X).b, (X - m.num(lo)).b)
        if dev_lo >= E.b:
            return True
        if dev_hi < E.a:
            return False
    return None


def _piece_ok(f, th: _Theta, i: int, lo: Fraction, hi: Fraction) -> bool:
    t_lo, t_hi = th.exact(i)
    for prec in IV_PRECS:
        m = IvMath(prec)
        try:
            E = iv_over(f, Point(lo), Point(hi), prec)
        except UnresolvedError:
            continue
        dev = max((m.num(t_hi) - m.num(lo)).b, (m.num(hi) - m.num(t_lo)).b)
        if dev < E.a:
            return True
    return False


def _resolve(f, th: _Theta, i: int, t: Point, r: Point, closed: bool):
    """(record, verdict): verdict True (pass), False (certified failure), None."""
    if _fails_at(f, th, i, t):
        return _record(f, th, i, t), False
    if closed and _fails_at(f, th, i, r):
        return _record(f, th, i, r), False
    t_q = Fraction(t.q) if t.exact else Fraction(point_box(t)[0])
    r_q = Fraction(r.q) if r.exact else Fraction(point_box(r)[1])
    stack = [(t_q, r_q, 0)]
    while stack:
        lo, hi, depth = stack.pop()
        if _piece_ok(f, th, i, lo, hi):
            continue
        for probe in (lo, hi):
            if t_q <= probe < r_q and _fails_at(f, th, i, Point(probe)):
                return _record(f, th, i, Point(probe)), False
        if depth >= SPLIT_DEPTH:
            return _record(f, th, i, Point(lo)), None
        mid = (lo + hi) / 2
        stack.append((mid, hi, depth + 1))
        stack.append((lo, mid, depth + 1))
    return None, True
