"""One-sided pi(x) bounds checked piece by piece between consecutive primes.

On a piece [t, r) with t a prime (or the range start) and r the next
breakpoint, pi(x) equals pi(t).  Two strategies:

* jump: the bound is certified increasing on the range, so a lower bound
  only needs pi(t) > B(r) and an upper bound pi(t) < B(t);
* hybrid: B is enclosed over the whole piece; no monotonicity is needed.

Pieces are first decided in float64 box arithmetic; anything undecided (or
failing) is redone with multiprecision intervals at 128, 256 and 512 bits.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional

import numpy as np

from ..analytic.enclosure import Enclosure, IvMath, hi_fraction, lo_fraction
from ..analytic.floatbox import Box, BoxMath, _frac_box
from ..certify.monotone import Monotonicity, certify_monotone
from ..errors import ConfigurationError, DomainError, MonotonicityError, UnresolvedError
from ..sieve import count_primes, count_range, primes_between
from .engine import Block, Sweep
from .points import Point
from .report import CheckKind, CheckReport, Record

IV_PRECS = (128, 256, 512)
HYBRID_DEPTH = 14
HYBRID_BUDGET = 2000


def point_box(pt: Point) -> tuple[float, float]:
    if pt.exact:
        return _frac_box(pt.q)
    v = pt.iv(IvMath(128))
    return _frac_box(lo_fraction(v))[0], _frac_box(hi_fraction(v))[1]


def next_prime_after(n: int, limit: int, cfg, backend) -> Optional[int]:
    """Smallest prime in (n, limit], or None."""
    width = 1 << 12
    lo = n + 1
    while lo <= limit:
        hi = min(limit, lo + width - 1)
        ps = primes_between(lo, hi, cfg, backend)
        if ps.size:
            return int(ps[0])
        lo, width = hi + 1, width * 2
    return None


def iv_value(f, x: Point, prec: int):
    m = IvMath(prec)
    return f(m, x.iv(m))


def iv_over(f, lo: Point, hi: Point, prec: int):
    m = IvMath(prec)
    a, b = lo.iv(m), hi.iv(m)
    return f(m, m.ctx.mpf([a.a, b.b]))


def _decide(pred, *args):
    """pred(prec, *args) -> True/False/None; escalate through IV_PRECS."""
    for prec in IV_PRECS:
        try:
            v = pred(prec, *args)
        except UnresolvedError:
            continue
        if v is not None:
            return v
    return None


class PiSweep(Sweep):
    """Lower or upper bounds for pi(x) over [a, b]."""

    def __init__(self, task, **kw):
        super().__init__(task, **kw)
        self.f = task.bound
        self.lower = task.kind is CheckKind.LOWER
        self.hybrid = task.strategy == "hybrid"
        self.a, self.b = task.lo, task.hi

    def prepare(self) -> list[str]:
        f, a, b = self.f, self.a, self.b
        a_lo = a.q if a.exact else lo_fraction(a.iv(IvMath(128)))
        try:
            f.check_domain(a_lo)
            iv_value(f, a, 128)
        except DomainError as exc:
            raise ConfigurationError(f"{f.ident} is not evaluable on the range: {exc}") from None
        except UnresolvedError:
            pass
        if self.hybrid:
            return ["monotonicity\tnot required (hybrid)"]
        b_hi = b.q if b.exact else hi_fraction(b.iv(IvMath(128)))
        cert = certify_monotone(f, a_lo, b_hi)
        if cert.verdict is not Monotonicity.INCREASING:
            raise MonotonicityError(
                f"{f.ident} is not certified increasing on [{a}, {b}] ({cert.verdict.value}); "
                "use the hybrid strategy")
        return [f"monotonicity\tIncreasing on [{a}, {b}] ({cert.pieces} pieces)"]

    def span(self):
        return self.a.floor(), self.b.floor()

    def start_bases(self):
        return (count_primes(self.a.floor() - 1, self.cfg, self.jobs, self.backend),)

    def count(self, blocks: list[Block]):
        return (count_range(blocks[0].lo, blocks[-1].hi, self.cfg, self.backend),)

    # -- one block ------------------------------------------------------------
    def _lookahead(self, blk: Block, last: bool) -> tuple[Point, bool]:
        if not last:
            p = next_prime_after(blk.hi, self.b.floor(), self.cfg, self.backend)
            if p is not None:
                return Point(p), False
        return self.b, True

    def run_block(self, blk: Block, bases: tuple, last: bool):
        (P0,) = bases
        primes = primes_between(blk.lo, blk.hi, self.cfg, self.backend).astype(np.int64)
        counts = P0 + np.arange(1, primes.size + 1, dtype=np.int64)
        if blk.index == 0:
            keep = primes > self.a.floor()
            pa = P0 + int(np.count_nonzero(~keep))
            bp, P = primes[keep], np.concatenate([[pa], counts[keep]])
            head = [self.a]
        else:
            bp, P, head = primes, counts, []
        nxt, closed_end = self._lookahead(blk, last)
        n = len(P)
        if n == 0:
            return {"checked": 0, "events": [], "closest": None}, (P0 + primes.size,)
        fl = bp.astype(np.float64)
        l_lo = np.empty(n)
        l_hi = np.empty(n)
        r_lo = np.empty(n)
        r_hi = np.empty(n)
        k = len(head)
        if k:
            l_lo[0], l_hi[0] = point_box(self.a)
        l_lo[k:] = fl
        l_hi[k:] = fl
        r_lo[:-1] = l_lo[1:]
        r_hi[:-1] = l_hi[1:]
        r_lo[-1], r_hi[-1] = point_box(nxt)
        closed = np.zeros(n, dtype=bool)
        closed[-1] = closed_end
        Pf = P.astype(np.float64)
        status, margin = self._box_status(Pf, l_lo, l_hi, r_lo, r_hi, closed)

        def left(i):
            return head[0] if i < k else Point(int(bp[i - k]))

        def right(i):
            return left(i + 1) if i + 1 < n else nxt

        events = []
        for i in np.flatnonzero(status != 1).tolist():
            ev = self._resolve(int(P[i]), left(i), right(i), bool(closed[i]))
            if ev is not None:
                events.append(ev)
        closest = None
        ok = status == 1
        if ok.any():
            i = int(np.flatnonzero(ok)[np.argmin(margin[ok])])
            x = right(i) if self.lower else left(i)
            closest = [float(margin[i]), x.key(), int(P[i])]
        return {"checked": n, "events": events, "closest": closest}, (P0 + primes.size,)

    def _box_status(self, P, l_lo, l_hi, r_lo, r_hi, closed):
        m = BoxMath()
        if self.hybrid:
            B = self.f(m, Box(l_lo, r_hi))
        elif self.lower:
            B = self.f(m, Box(r_lo, r_hi))
        else:
            B = self.f(m, Box(l_lo, l_hi))
        status = np.zeros(P.size, dtype=np.int8)
        with np.errstate(invalid="ignore"):
            if self.lower:
                status[B.hi < P] = 1
                margin = (P - B.hi) / P
            else:
                status[P < B.lo] = 1
                margin = (B.lo - P) / P
        return status, margin

    # -- multiprecision follow-up -------------------------------------------------
    def _fails_at(self, P: int, x: Point) -> Optional[bool]:
        """Certified failure of the inequality at x (pi(x) = P); None if undecided."""
        def pred(prec):
            B = iv_value(self.f, x, prec)
            if self.lower:
                return True if B.a >= P else (False if B.b < P else None)
            return True if B.b <= P else (False if B.a > P else None)
        return _decide(pred)

    def _resolve(self, P: int, t: Point, r: Point, closed: bool):
        if self.hybrid:
            return self._resolve_hybrid(P, t, r, closed)
        if not self.lower:
            bad = self._fails_at(P, t)
            if bad is None:
                return ["U", t.key(), P]
            return ["F", t.key(), P] if bad else None

        def pred(prec):
            B = iv_value(self.f, r, prec)
            if B.b < P:
                return "pass"
            if B.a > P or (closed and B.a >= P):
                return "fail"
            return None
        verdict = _decide(pred)
        if verdict == "pass":
            return None
        if verdict is None:
            return ["U", r.key(), P]
        w = self._witness(P, t, r, closed)
        return ["F", w.key(), P] if w is not None else ["U", r.key(), P]

    def _witness(self, P: int, t: Point, r: Point, closed: bool) -> Optional[Point]:
        """A point of [t, r) (or [t, r]) where the lower bound certainly fails."""
        if self._fails_at(P, t):
            return t
        # integers strictly inside (t, r)
        lo_i = t.floor() + 1
        hi_i = r.floor() - 1 if r.exact and r.q.denominator == 1 else r.floor()
        if lo_i <= hi_i and self._fails_at(P, Point(hi_i)):
            while lo_i < hi_i:            # smallest failing integer
                mid = (lo_i + hi_i) // 2
                if self._fails_at(P, Point(mid)):
                    hi_i = mid
                else:
                    lo_i = mid + 1
            return Point(hi_i)
        # crossing within the last unit before r
        lo = max(hi_fraction(t.iv(IvMath(128))), Fraction(max(hi_i, 0)))
        hi = r.q if r.exact else lo_fraction(r.iv(IvMath(128)))
        best = None
        for _ in range(80):
            mid = (lo + hi) / 2
            mid = Fraction(float(mid)) if lo < Fraction(float(mid)) < hi else mid
            if self._fails_at(P, Point(mid)):
                hi = best = mid
                if hi - lo < Fraction(1, 2**30):
                    break
            else:
                lo = mid
        if best is not None:
            return Point(best)
        return r if closed else None

    def _resolve_hybrid(self, P: int, t: Point, r: Point, closed: bool):
        bad = self._fails_at(P, t)
        if bad:
            return ["F", t.key(), P]
        if closed and self._fails_at(P, r):
            return ["F", r.key(), P]
        t_q = t.q if t.exact else lo_fraction(t.iv(IvMath(128)))
        r_q = r.q if r.exact else hi_fraction(r.iv(IvMath(128)))
        stack = [(t_q, r_q, 0)]
        budget = HYBRID_BUDGET
        while stack:
            lo, hi, depth = stack.pop()
            budget -= 1

            def pred(prec, lo=lo, hi=hi):
                B = iv_over(self.f, Point(lo), Point(hi), prec)
                return True if (B.b < P if self.lower else B.a > P) else None
            if _decide(pred):
                continue
            for probe in (lo, hi):
                if t_q < probe < r_q and self._fails_at(P, Point(probe)):
                    return ["F", Point(probe).key(), P]
            if depth >= HYBRID_DEPTH or budget <= 0:
                return ["U", Point(lo).key(), P]
            mid = (lo + hi) / 2
            stack.append((mid, hi, depth + 1))
            stack.append((lo, mid, depth + 1))
        return None

    # -- merge and report -----------------------------------------------------------
    def new_state(self) -> dict:
        return {"checked": 0, "events": [], "closest": None}

    def merge(self, state: dict, res: dict) -> None:
        state["checked"] += res["checked"]
        state["events"].extend(res["events"])
        c = res["closest"]
        if c is not None and (state["closest"] is None or c[0] < state["closest"][0]):
            state["closest"] = c

    def record(self, key: str, P: int) -> Record:
        x = Point.from_key(key)
        try:
            rhs = Enclosure.from_iv(iv_value(self.f, x, 128))
        except UnresolvedError:
            rhs = Enclosure.from_iv(iv_value(self.f, x, 512))
        return Record(x, Enclosure.point(P), rhs)

    def finish(self, state: dict, report: CheckReport) -> None:
        report.breakpoints_checked = state["checked"]
        for kind, key, P in state["events"]:
            (report.failures if kind == "F" else report.unresolved).append(self.record(key, P))
        if state["closest"] is not None:
            _, key, P = state["closest"]
            report.closest = self.record(key, P)
