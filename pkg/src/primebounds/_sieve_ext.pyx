# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled segmented sieve over odd numbers.

Odd n is stored at bit index i = (n - 1) // 2.  A set bit means "no factor
found yet".  Multiples of 3, 5, 7, 11 and 13 are stamped in from a periodic
pattern instead of being crossed off one by one.
"""

from libc.stdint cimport uint64_t, uint32_t
from libc.stdlib cimport malloc, free
from libc.math cimport log, llrint

import numpy as np
cimport numpy as cnp

cnp.import_array()

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil
    int __builtin_ctzll(unsigned long long) nogil

cdef enum:
    PERIOD = 15015          # 3*5*7*11*13, period of the pattern in bit indices
    FIRST_SIEVED = 17       # smallest base prime crossed off explicitly

cdef uint64_t[6] _KEEP_IDX = [0, 1, 2, 3, 5, 6]   # bit indices of 1, 3, 5, 7, 11, 13

cdef uint64_t *_pattern = NULL


cdef void _build_pattern() noexcept nogil:
    global _pattern
    cdef uint64_t j, n
    _pattern = <uint64_t *> malloc(PERIOD * sizeof(uint64_t))
    for j in range(PERIOD):
        _pattern[j] = 0
    for j in range(64 * PERIOD):
        n = 2 * (j % PERIOD) + 1
        if n % 3 and n % 5 and n % 7 and n % 11 and n % 13:
            _pattern[j >> 6] |= (<uint64_t> 1) << (j & 63)


_build_pattern()


cdef inline uint64_t _pattern_word(uint64_t bit) noexcept nogil:
    # 64 bits of the pattern starting at absolute pattern position `bit`
    cdef uint64_t pos = bit % (64 * PERIOD)
    cdef uint64_t w = pos >> 6
    cdef uint64_t sh = pos & 63
    cdef uint64_t nxt
    if sh == 0:
        return _pattern[w]
    nxt = w + 1
    if nxt == PERIOD:
        nxt = 0
    return (_pattern[w] >> sh) | (_pattern[nxt] << (64 - sh))


cdef class SegmentSieve:
    """Iterate segments of the odd-number bitmap covering [lo, hi].

    ``base`` must hold every odd prime up to isqrt(hi) in increasing order.
    The prime 2 is never reported; callers account for it.
    """

    cdef uint64_t i_lo, i_hi, cur
    cdef uint64_t nbits, nwords
    cdef uint64_t *words
    cdef uint64_t *nxt
    cdef uint32_t *primes
    cdef Py_ssize_t nprimes
    cdef object _base_ref

    def __cinit__(self, uint64_t lo, uint64_t hi, const uint32_t[::1] base,
                  Py_ssize_t segment_bytes):
        cdef Py_ssize_t k
        cdef uint64_t p, m
        self.words = NULL
        self.nxt = NULL
        if segment_bytes < 8:
            raise ValueError("segment_bytes too small")
        self.nwords = <uint64_t> ((segment_bytes + 7) // 8)
        self.nbits = 64 * self.nwords
        if lo < 1:
            lo = 1
        self.i_lo = lo // 2
        if hi < 1:
            self.i_hi = 0
            self.cur = 1        # empty
        else:
            self.i_hi = (hi - 1) // 2
            self.cur = self.i_lo
        self._base_ref = base
        self.primes = <uint32_t *> &base[0] if base.shape[0] else NULL
        self.nprimes = base.shape[0]
        self.words = <uint64_t *> malloc(self.nwords * sizeof(uint64_t))
        self.nxt = <uint64_t *> malloc((self.nprimes + 1) * sizeof(uint64_t))
        if self.words == NULL or self.nxt == NULL:
            raise MemoryError()
        for k in range(self.nprimes):
            p = base[k]
            m = p * p
            if m < lo:
                m = ((lo + p - 1) // p) * p
                if (m & 1) == 0:
                    m += p
            self.nxt[k] = (m - 1) // 2

    def __dealloc__(self):
        free(self.words)
        free(self.nxt)

    @property
    def done(self):
        return self.cur > self.i_hi

    @property
    def position(self):
        """Largest integer already covered by emitted segments."""
        return 2 * self.cur

    cdef uint64_t _fill(self) noexcept nogil:
        # sieve the segment starting at bit index self.cur; returns valid bits
        cdef uint64_t s = self.cur
        cdef uint64_t valid = self.i_hi - s + 1
        cdef uint64_t k, j, p, idx, limit_n
        cdef uint64_t nwords_used
        cdef Py_ssize_t q, t
        if valid > self.nbits:
            valid = self.nbits
        nwords_used = (valid + 63) >> 6
        for k in range(nwords_used):
            self.words[k] = _pattern_word(s + 64 * k)
        # restore 3..13 themselves and drop 1
        for t in range(6):
            idx = _KEEP_IDX[t]
            if s <= idx < s + valid:
                j = idx - s
                if idx == 0:
                    self.words[j >> 6] &= ~((<uint64_t> 1) << (j & 63))
                else:
                    self.words[j >> 6] |= (<uint64_t> 1) << (j & 63)
        limit_n = 2 * (s + valid - 1) + 1
        for q in range(self.nprimes):
            p = self.primes[q]
            if p < FIRST_SIEVED:
                continue
            if p * p > limit_n:
                break
            j = self.nxt[q]
            if j >= s + valid:
                continue
            j -= s
            while j < valid:
                self.words[j >> 6] &= ~((<uint64_t> 1) << (j & 63))
                j += p
            self.nxt[q] = j + s
        if valid & 63:
            self.words[nwords_used - 1] &= ((<uint64_t> 1) << (valid & 63)) - 1
        self.cur = s + valid
        return valid

    cdef uint64_t _count_segment(self) noexcept nogil:
        cdef uint64_t valid = self._fill()
        cdef uint64_t k, c = 0
        for k in range((valid + 63) >> 6):
            c += __builtin_popcountll(self.words[k])
        return c

    def count_all(self):
        """Count the primes in every remaining segment (odd primes only)."""
        cdef uint64_t total = 0
        with nogil:
            while self.cur <= self.i_hi:
                total += self._count_segment()
        return total

    def next_count(self):
        if self.cur > self.i_hi:
            return None
        cdef uint64_t c
        with nogil:
            c = self._count_segment()
        return c

    def next_primes(self):
        """Odd primes of the next segment as a uint64 array, or None."""
        if self.cur > self.i_hi:
            return None
        cdef uint64_t s = self.cur
        cdef uint64_t valid, k, w, c = 0, base_n
        cdef cnp.ndarray[cnp.uint64_t, ndim=1] out
        cdef uint64_t *op
        with nogil:
            valid = self._fill()
            for k in range((valid + 63) >> 6):
                c += __builtin_popcountll(self.words[k])
        out = np.empty(c, dtype=np.uint64)
        op = <uint64_t *> out.data
        c = 0
        with nogil:
            for k in range((valid + 63) >> 6):
                w = self.words[k]
                base_n = 2 * (s + 64 * k) + 1
                while w:
                    op[c] = base_n + 2 * <uint64_t> __builtin_ctzll(w)
                    c += 1
                    w &= w - 1
        return out

    def theta_all(self, int frac_bits):
        """Return (count, mantissa) over remaining segments.

        mantissa = sum of round(log(p) * 2**frac_bits) over odd primes p,
        with frac_bits <= 47 so every term is exact in a double.
        """
        if not 0 <= frac_bits <= 47:
            raise ValueError("frac_bits must lie in [0, 47] for the compiled path")
        cdef double scale = 2.0 ** frac_bits
        cdef uint64_t acc_lo = 0, acc_hi = 0, term, total = 0
        cdef uint64_t valid, k, w, base_n, s
        with nogil:
            while self.cur <= self.i_hi:
                s = self.cur
                valid = self._fill()
                for k in range((valid + 63) >> 6):
                    w = self.words[k]
                    base_n = 2 * (s + 64 * k) + 1
                    while w:
                        term = <uint64_t> llrint(
                            log(<double> (base_n + 2 * <uint64_t> __builtin_ctzll(w))) * scale)
                        acc_lo += term
                        if acc_lo < term:
                            acc_hi += 1
                        total += 1
                        w &= w - 1
        return total, (int(acc_hi) << 64) | int(acc_lo)
