"""Pure numpy fallback for the compiled segment sieve.

Mirrors the interface and segment boundaries of ``_sieve_ext.SegmentSieve``
so that both backends partition a range identically.
"""

import numpy as np

_LOW_MASK = (1 << 26) - 1


class SegmentSieve:
    def __init__(self, lo, hi, base, segment_bytes):
        if segment_bytes < 8:
            raise ValueError("segment_bytes too small")
        lo = max(int(lo), 1)
        hi = int(hi)
        self.nbits = 64 * ((int(segment_bytes) + 7) // 8)
        self.i_lo = lo // 2
        if hi < 1:
            self.i_hi, self.cur = 0, 1
        else:
            self.i_hi, self.cur = (hi - 1) // 2, self.i_lo
        self.base = np.asarray(base, dtype=np.uint64)
        p = self.base.astype(object)
        first = []
        for q in p:
            m = q * q
            if m < lo:
                m = -(-lo // q) * q
                if m % 2 == 0:
                    m += q
            first.append((m - 1) // 2)
        self.nxt = first

    @property
    def done(self):
        return self.cur > self.i_hi

    @property
    def position(self):
        return 2 * self.cur

    def _fill(self):
        s = self.cur
        valid = min(self.i_hi - s + 1, self.nbits)
        mask = np.ones(valid, dtype=bool)
        if s == 0:
            mask[0] = False
        limit_n = 2 * (s + valid - 1) + 1
        end = s + valid
        for q, p in enumerate(self.base.tolist()):
            if p * p > limit_n:
                break
            j = self.nxt[q]
            if j >= end:
                continue
            mask[j - s::p] = False
            # first multiple at or past the segment end
            self.nxt[q] = j + ((end - j + p - 1) // p) * p
        self.cur = end
        return s, mask

    def count_all(self):
        total = 0
        while not self.done:
            total += int(np.count_nonzero(self._fill()[1]))
        return total

    def next_count(self):
        if self.done:
            return None
        return int(np.count_nonzero(self._fill()[1]))

    def next_primes(self):
        if self.done:
            return None
        s, mask = self._fill()
        idx = np.flatnonzero(mask).astype(np.uint64)
        return 2 * (idx + np.uint64(s)) + np.uint64(1)

    def theta_all(self, frac_bits):
        if not 0 <= frac_bits <= 47:
            raise ValueError("frac_bits must lie in [0, 47] for the vectorised path")
        scale = float(2 ** frac_bits)
        total = 0
        mantissa = 0
        while not self.done:
            primes = self.next_primes()
            terms = np.rint(np.log(primes.astype(np.float64)) * scale).astype(np.uint64)
            # split so the uint64 sums cannot overflow
            low = int((terms & np.uint64(_LOW_MASK)).sum(dtype=np.uint64))
            high = int((terms >> np.uint64(26)).sum(dtype=np.uint64))
            mantissa += (high << 26) + low
            total += primes.size
        return total, mantissa
