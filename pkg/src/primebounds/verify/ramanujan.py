"""R_n(x) = e^n / Xi_n(x) (x / log x)^(2^n - 1) pi(x / e^n) - pi(x)^(2^n) > 0 on a range.

Breakpoints are the range start, the primes p and the points e^n q for
primes q.  Between consecutive breakpoints both counts are constant and the
coefficient C(x) = e^n / Xi_n(x) (x / log x)^(2^n - 1) is certified
increasing, so R_n increases there: a piece either passes at its left end, or
fails on an initial segment ending at the crossing C(x) pi(x/e^n) = pi(x)^(2^n).

Comparisons use D = log C(x) + log pi(x/e^n) - 2^n log pi(x), so the huge
powers never materialise.  n = 1 is the Ramanujan inequality.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from ..analytic.enclosure import Enclosure, IvMath, hi_fraction, lo_fraction
from ..analytic.floatbox import Box, BoxMath
from ..analytic.functions import rnxi_log_coef
from ..certify.monotone import Monotonicity, certify_monotone
from ..errors import ConfigurationError, MonotonicityError, UnresolvedError
from ..sieve import count_range, prime_pi_many, primes_between
from .engine import Block, Sweep
from .pi_checks import IV_PRECS, next_prime_after, point_box
from .points import Point, exp_bounds, floor_times_exp
from .report import CheckKind, CheckReport, Record

CROSSING_STEPS = 90


class RamanujanSweep(Sweep):
    def __init__(self, task, **kw):
        super().__init__(task, **kw)
        self.n = task.n
        self.power = 2 ** task.n
        self.coef = rnxi_log_coef(task.n)
        self.a, self.b = task.lo, task.hi

    # -- setup ------------------------------------------------------------------
    def prepare(self) -> list[str]:
        a, b, n = self.a, self.b, self.n
        if a < 10:
            raise ConfigurationError("Ramanujan-type checks need a >= 10")
        if b.floor_scaled(n) < 2:
            raise ConfigurationError(f"need b * e^-{n} >= 2 so that pi(x/e^{n}) is meaningful")
        if not a > Point(1, n - 1):
            raise ConfigurationError(f"Xi_{n} needs x > e^{n - 1}")
        a_lo = a.q if a.exact else lo_fraction(a.iv(IvMath(128)))
        b_hi = b.q if b.exact else hi_fraction(b.iv(IvMath(128)))
        cert = certify_monotone(self.coef, a_lo, b_hi)
        if cert.verdict is not Monotonicity.INCREASING:
            raise MonotonicityError(f"{self.coef.ident} not certified increasing on [{a}, {b}]")
        return [f"monotonicity\t{self.coef.ident} Increasing on [{a}, {b}] ({cert.pieces} pieces)"]

    def span(self):
        return self.a.floor(), self.b.floor()

    def _q_range(self, blk: Block, last: bool) -> tuple[int, int]:
        n = self.n
        if blk.index == 0:
            ql = self.a.floor_scaled(n) + 1
        else:
            ql = Point(blk.lo).floor_scaled(n) + 1
        qh = self.b.floor_scaled(n) if last else Point(blk.hi + 1).floor_scaled(n)
        return ql, qh

    def start_bases(self):
        p0, q0 = prime_pi_many([self.a.floor() - 1, self.a.floor_scaled(self.n)],
                               self.cfg, self.jobs, self.backend)
        return (p0, q0)

    def count(self, blocks: list[Block]):
        ql, _ = self._q_range(blocks[0], False)
        _, qh = self._q_range(blocks[-1], False)
        return (count_range(blocks[0].lo, blocks[-1].hi, self.cfg, self.backend),
                count_range(ql, qh, self.cfg, self.backend) if ql <= qh else 0)

    def _lookahead(self, blk: Block, last: bool, qh: int) -> tuple[Point, bool]:
        if not last:
            cands = []
            p = next_prime_after(blk.hi, self.b.floor(), self.cfg, self.backend)
            if p is not None:
                cands.append(Point(p))
            q = next_prime_after(qh, self.b.floor_scaled(self.n), self.cfg, self.backend)
            if q is not None:
                cands.append(Point(q, self.n))
            if cands:
                return min(cands), False
        return self.b, True

    # -- one block --------------------------------------------------------------
    def run_block(self, blk: Block, bases: tuple, last: bool):
        P0, Q0 = bases
        n = self.n
        ql, qh = self._q_range(blk, last)
        primes = primes_between(blk.lo, blk.hi, self.cfg, self.backend).astype(np.int64)
        qs = (primes_between(ql, qh, self.cfg, self.backend).astype(np.int64)
              if ql <= qh else np.zeros(0, dtype=np.int64))
        after = (P0 + primes.size, Q0 + qs.size)
        first = blk.index == 0
        keep = primes > self.a.floor() if first else np.ones(primes.size, dtype=bool)
        bp = primes[keep]
        P_p = P0 + 1 + np.flatnonzero(keep)
        Q_p = Q0 + np.searchsorted(qs, floor_times_exp(bp, -n), side="right")
        fx = floor_times_exp(qs, n)
        P_s = P0 + np.searchsorted(primes, fx, side="right")
        Q_s = Q0 + 1 + np.arange(qs.size)
        keys = np.concatenate([bp * 2, fx * 2 + 1])
        order = np.argsort(keys, kind="stable")
        kind = np.concatenate([np.zeros(bp.size, np.int8), np.ones(qs.size, np.int8)])[order]
        val = np.concatenate([bp, qs])[order]
        P = np.concatenate([P_p, P_s])[order]
        Q = np.concatenate([Q_p, Q_s])[order]
        head = 0
        if first:
            head = 1
            kind = np.concatenate([[2], kind])
            val = np.concatenate([[0], val])
            P = np.concatenate([[P0 + int(np.count_nonzero(~keep))], P])
            Q = np.concatenate([[Q0], Q])
        nxt, closed_end = self._lookahead(blk, last, qh)
        m = len(P)
        if m == 0:
            return {"checked": 0, "events": [], "closest": None}, after

        def point(i: int) -> Point:
            if i >= m:
                return nxt
            if kind[i] == 2:
                return self.a
            return Point(int(val[i]), n if kind[i] == 1 else 0)

        # float boxes of the breakpoints
        lo = val.astype(np.float64)
        hi = lo.copy()
        sc = kind == 1
        e_lo, e_hi = (float(v) for v in exp_bounds(n))
        e_lo, e_hi = np.nextafter(e_lo, -np.inf), np.nextafter(e_hi, np.inf)
        lo[sc] = np.nextafter(lo[sc] * e_lo, -np.inf)
        hi[sc] = np.nextafter(hi[sc] * e_hi, np.inf)
        if head:
            lo[0], hi[0] = point_box(self.a)
        D = self._box_d(Box(lo, hi), P, Q)
        status = np.zeros(m, dtype=np.int8)
        status[D.lo > 0] = 1
        status[(D.hi <= 0) | (Q == 0)] = -1
        events = []
        for i in np.flatnonzero(status == 0).tolist():
            s = self._sign(point(i), int(P[i]), int(Q[i]))
            status[i] = s
            if s == 0:
                events.append((i, ["U", point(i).key(), int(P[i]), int(Q[i])]))
        bad = np.flatnonzero(status == -1)
        if bad.size:
            # right ends of the failing pieces
            n_lo, n_hi = point_box(nxt)
            r_lo = np.append(lo[1:], n_lo)[bad]
            r_hi = np.append(hi[1:], n_hi)[bad]
            Dr = self._box_d(Box(r_lo, r_hi), P[bad], Q[bad])
            ends = np.where(Dr.hi <= 0, -1, np.where(Dr.lo > 0, 1, 0)).astype(np.int8)
            for j in np.flatnonzero(ends == 0).tolist():
                i = int(bad[j])
                ends[j] = self._sign(point(i + 1), int(P[i]), int(Q[i]))
            cross = np.flatnonzero(ends != -1)
            # start strictly inside the piece so that every probe uses its counts
            brackets = self._crossings(hi[bad[cross]], r_lo[cross], P[bad[cross]], Q[bad[cross]])
            where = dict(zip(cross.tolist(), brackets))
            for j, i in enumerate(bad.tolist()):
                x, r = point(i), point(i + 1)
                p, q = int(P[i]), int(Q[i])
                if ends[j] == -1:
                    closed = i == m - 1 and closed_end
                    ev = ["F", x.key(), p, q, r.key(), r.key(), not closed, r.key()]
                else:
                    b_lo, b_hi = where[j]
                    e_lo = x if b_lo is None else Point(b_lo)
                    e_hi = r if b_hi is None else Point(b_hi)
                    ev = ["F", x.key(), p, q, e_lo.key(), e_hi.key(), False, r.key()]
                events.append((i, ev))
        events = [ev for _, ev in sorted(events, key=lambda t: t[0])]
        closest = None
        ok = np.flatnonzero(status == 1)
        if ok.size:
            j = int(ok[np.argmin(D.lo[ok])])
            closest = [float(D.lo[j]), point(j).key(), int(P[j]), int(Q[j])]
        return {"checked": m, "events": events, "closest": closest}, after

    def _crossings(self, x_hi, r_lo, P, Q) -> list:
        """Brackets (lo, hi) of the zero of R_n on each failing piece.

        Vectorised bisection in box arithmetic: lo only moves to points where
        R_n <= 0 is certified, hi only to points where R_n > 0 is.  None means
        the bracket end is still the piece end point itself.
        """
        k = x_hi.size
        if not k:
            return []
        lo, hi = x_hi.copy(), r_lo.copy()
        moved_lo = np.zeros(k, dtype=bool)
        moved_hi = np.zeros(k, dtype=bool)
        live = np.ones(k, dtype=bool)
        for _ in range(CROSSING_STEPS):
            idx = np.flatnonzero(live)
            if not idx.size:
                break
            mid = (lo[idx] + hi[idx]) / 2
            stuck = (mid <= lo[idx]) | (mid >= hi[idx])
            d = self._box_d(Box(mid), P[idx], Q[idx])
            neg = (d.hi <= 0) & ~stuck
            pos = (d.lo > 0) & ~stuck
            lo[idx[neg]] = mid[neg]
            moved_lo[idx[neg]] = True
            hi[idx[pos]] = mid[pos]
            moved_hi[idx[pos]] = True
            live[idx[~(neg | pos)]] = False
        return [(Fraction(float(lo[j])) if moved_lo[j] else None,
                 Fraction(float(hi[j])) if moved_hi[j] else None) for j in range(k)]

    def _box_d(self, x: Box, P, Q) -> Box:
        bm = BoxMath()
        with np.errstate(divide="ignore"):
            lq = bm.log(Box(Q.astype(np.float64)))
        lp = bm.log(Box(P.astype(np.float64)))
        return self.coef(bm, x) + lq - lp * self.power

    # -- multiprecision ---------------------------------------------------------
    def _d_iv(self, m: IvMath, x, p: int, q: int):
        return self.coef(m, x) + m.log(m.num(q)) - self.power * m.log(m.num(p))

    def _sign(self, x: Point, p: int, q: int) -> int:
        """+1 if R_n(x) > 0 certainly, -1 if R_n(x) <= 0 certainly, 0 otherwise."""
        if q == 0:
            return -1
        for prec in IV_PRECS:
            m = IvMath(prec)
            try:
                d = self._d_iv(m, x.iv(m), p, q)
            except UnresolvedError:
                continue
            if d.a > 0:
                return 1
            if d.b <= 0:
                return -1
        return 0

    # -- merge and report -------------------------------------------------------
    def new_state(self) -> dict:
        return {"checked": 0, "failures": [], "unresolved": [], "pending": None, "closest": None}

    def _flush(self, state):
        if state["pending"] is not None:
            state["failures"].append(state["pending"])
            state["pending"] = None

    def merge(self, state: dict, res: dict) -> None:
        state["checked"] += res["checked"]
        for ev in res["events"]:
            if ev[0] == "U":
                self._flush(state)
                state["unresolved"].append(ev)
                continue
            pend = state["pending"]
            if pend is not None and pend[6] and pend[7] == ev[1]:
                # the previous failure runs up to this breakpoint, which fails too
                state["pending"] = pend[:4] + ev[4:]
            else:
                self._flush(state)
                state["pending"] = ev
        c = res["closest"]
        if c is not None and (state["closest"] is None or c[0] < state["closest"][0]):
            state["closest"] = c

    def record(self, key: str, p: int, q: int, end=None) -> Record:
        x = Point.from_key(key)
        lhs = Enclosure.point(p ** self.power)
        for prec in IV_PRECS:
            m = IvMath(prec)
            try:
                rhs = m.exp(self.coef(m, x.iv(m))) * m.num(q)
                break
            except UnresolvedError:
                continue
        return Record(x, lhs, Enclosure.from_iv(rhs), end)

    def finish(self, state: dict, report: CheckReport) -> None:
        self._flush(state)
        report.breakpoints_checked = state["checked"]
        for ev in state["failures"]:
            end = (Point.from_key(ev[4]), Point.from_key(ev[5]))
            report.failures.append(self.record(ev[1], ev[2], ev[3], end))
        for ev in state["unresolved"]:
            report.unresolved.append(self.record(ev[1], ev[2], ev[3]))
        if state["closest"] is not None:
            _, key, p, q = state["closest"]
            report.closest = self.record(key, p, q)


def ramanujan_task_kind(n: int) -> CheckKind:
    return CheckKind.RAMANUJAN if n == 1 else CheckKind.RNXI
