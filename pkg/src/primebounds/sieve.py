"""Segmented prime generation: exact pi(x), fixed-point theta(x), prime streams.

theta(x) is accumulated as an integer mantissa in units of 2**-F.  Each
log p is rounded to the nearest multiple of 2**-F, so the accumulated value
is within pi(x) * 2**(1 - F) of the true theta(x).
"""

from __future__ import annotations

import math
import os
import tempfile
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterator, Optional, Sequence

import numpy as np
from mpmath.ctx_mp import MPContext

from ._kernel import segment_sieve
from .errors import CheckpointError, ConfigurationError

WORD_LIMIT = 2**63 - 1
# the vectorised log is trusted to a few ulps; beyond this use multiprecision
FAST_FRAC_BITS = 45


@dataclass(frozen=True)
class SieveConfig:
    segment_size: int = 1 << 17
    frac_bits: int = 40
    checkpoint_interval: int = 1 << 30

    def __post_init__(self):
        if self.segment_size < 1 << 14:
            raise ConfigurationError("segment_size must be at least 2**14 bytes")
        if self.frac_bits < 40:
            raise ConfigurationError("frac_bits must be at least 40")
        if self.checkpoint_interval < 1:
            raise ConfigurationError("checkpoint_interval must be positive")


DEFAULT_CONFIG = SieveConfig()


@dataclass(frozen=True)
class PrimeStats:
    """pi(x) exactly, theta(x) as theta_fx * 2**-frac_bits +- theta_err."""

    x: int
    pi: int
    theta_fx: int
    frac_bits: int

    @property
    def theta_err(self) -> Fraction:
        return Fraction(self.pi * 2, 2**self.frac_bits)

    @property
    def theta(self) -> float:
        return math.ldexp(self.theta_fx, -self.frac_bits)

    def theta_bounds(self) -> tuple[Fraction, Fraction]:
        mid = Fraction(self.theta_fx, 2**self.frac_bits)
        return mid - self.theta_err, mid + self.theta_err


@dataclass(frozen=True)
class Checkpoint:
    """One-line resumable state: ``<x> <pi> <theta_mantissa> <frac_bits>``.

    frac_bits == 0 marks a checkpoint that does not track theta.
    """

    x: int
    pi: int
    theta_mantissa: int = 0
    frac_bits: int = 0

    def line(self) -> str:
        return f"{self.x} {self.pi} {self.theta_mantissa} {self.frac_bits}\n"

    @classmethod
    def parse(cls, text: str) -> "Checkpoint":
        lines = text.splitlines()
        if len(lines) != 1:
            raise CheckpointError(f"expected one line, found {len(lines)}")
        parts = lines[0].split()
        if len(parts) != 4:
            raise CheckpointError(f"expected 4 fields, found {len(parts)}")
        try:
            x, pi, mant, bits = (int(p) for p in parts)
        except ValueError:
            raise CheckpointError(f"non-integer field in {lines[0]!r}") from None
        if min(x, pi, mant, bits) < 0:
            raise CheckpointError("negative field")
        if bits == 0 and mant != 0:
            raise CheckpointError("theta mantissa without fractional bits")
        if 0 < bits < 40:
            raise CheckpointError(f"frac_bits {bits} below the supported minimum")
        return cls(x, pi, mant, bits)

    @classmethod
    def load(cls, path) -> Optional["Checkpoint"]:
        """Return the stored checkpoint, or None if no file exists."""
        try:
            with open(path) as fh:
                text = fh.read()
        except FileNotFoundError:
            return None
        return cls.parse(text)

    def save(self, path) -> None:
        atomic_write(path, self.line())


def atomic_write(path, text: str) -> None:
    path = os.fspath(path)
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=".ckpt")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
            fh.flush()
            os.fsync(fh.fileno())
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


@lru_cache(maxsize=8)
def _simple_odd_primes(limit: int) -> np.ndarray:
    if limit < 3:
        return np.zeros(0, dtype=np.uint32)
    flags = np.ones(limit // 2 + 1, dtype=bool)  # flags[i] <-> 2i+1
    flags[0] = False
    for i in range(1, (math.isqrt(limit) - 1) // 2 + 1):
        if flags[i]:
            p = 2 * i + 1
            flags[p * p // 2::p] = False
    idx = np.flatnonzero(flags)
    primes = (2 * idx + 1).astype(np.uint32)
    return primes[primes <= limit]


def odd_primes_upto(limit: int, backend=None) -> np.ndarray:
    """All odd primes <= limit as uint32 (limit < 2**32)."""
    limit = int(limit)
    if limit <= 1 << 24:
        return _simple_odd_primes(limit)
    return _large_odd_primes(limit, backend or "")


@lru_cache(maxsize=4)
def _large_odd_primes(limit: int, backend: str) -> np.ndarray:
    base = _simple_odd_primes(math.isqrt(limit))
    sv = segment_sieve(backend or None)(3, limit, base, 1 << 18)
    parts = []
    while (arr := sv.next_primes()) is not None:
        parts.append(arr.astype(np.uint32))
    return np.concatenate(parts) if parts else np.zeros(0, dtype=np.uint32)


def _check_range(lo: int, hi: int) -> None:
    if lo > hi:
        raise ValueError(f"inverted range [{lo}, {hi}]")
    if hi > WORD_LIMIT:
        raise ValueError(f"upper end {hi} exceeds the sieve limit 2**63 - 1")


def _make(lo: int, hi: int, cfg: SieveConfig, backend):
    base = odd_primes_upto(math.isqrt(hi), backend)
    return segment_sieve(backend)(lo, hi, base, cfg.segment_size)


def iter_prime_arrays(lo: int, hi: int, cfg: SieveConfig = DEFAULT_CONFIG,
                      backend=None) -> Iterator[np.ndarray]:
    """Yield uint64 arrays of the primes in [lo, hi], segment by segment."""
    lo, hi = int(lo), int(hi)
    _check_range(lo, hi)
    if lo <= 2 <= hi:
        yield np.array([2], dtype=np.uint64)
    if hi < 3:
        return
    sv = _make(max(lo, 3), hi, cfg, backend)
    while (arr := sv.next_primes()) is not None:
        if arr.size:
            yield arr


def primes_between(lo: int, hi: int, cfg: SieveConfig = DEFAULT_CONFIG, backend=None) -> np.ndarray:
    parts = list(iter_prime_arrays(lo, hi, cfg, backend))
    return np.concatenate(parts) if parts else np.zeros(0, dtype=np.uint64)


def count_range(lo: int, hi: int, cfg: SieveConfig = DEFAULT_CONFIG, backend=None) -> int:
    """Number of primes in [lo, hi]."""
    lo, hi = int(lo), int(hi)
    if hi < max(lo, 2):
        return 0
    _check_range(lo, hi)
    n = 1 if lo <= 2 <= hi else 0
    if hi >= 3:
        n += int(_make(max(lo, 3), hi, cfg, backend).count_all())
    return n


def _blocks(lo: int, hi: int, size: int) -> list[tuple[int, int]]:
    out = []
    start = lo
    while start <= hi:
        end = min(hi, start + size - 1)
        out.append((start, end))
        start = end + 1
    return out


def _map_ordered(fn: Callable, items: Sequence, jobs: int) -> Iterator:
    """Ordered map; threads run concurrently because the kernel drops the GIL."""
    if jobs <= 1 or len(items) <= 1:
        for it in items:
            yield fn(it)
        return
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        yield from pool.map(fn, items)


def _split(lo: int, hi: int, jobs: int, cap: Optional[int] = None) -> list[tuple[int, int]]:
    span = hi - lo + 1
    size = max(1, -(-span // max(jobs, 1)))
    if cap:
        size = min(size, cap)
    return _blocks(lo, hi, size)


def count_primes(x, cfg: SieveConfig = DEFAULT_CONFIG, jobs: int = 1, backend=None) -> int:
    """pi(x) for real x (floors non-integers)."""
    x = math.floor(x)
    if x < 2:
        return 0
    blocks = _split(2, x, jobs)
    return sum(_map_ordered(lambda b: count_range(b[0], b[1], cfg, backend), blocks, jobs))


def prime_pi_many(points: Sequence[int], cfg: SieveConfig = DEFAULT_CONFIG, jobs: int = 1,
                  backend=None) -> list[int]:
    """pi at several points with a single sweep over [2, max(points)]."""
    pts = sorted(set(int(math.floor(p)) for p in points))
    counts = {}
    running, prev = 0, 2
    for p in pts:
        running += count_primes_between(prev, p, cfg, jobs, backend)
        prev = max(prev, p + 1)
        counts[p] = running
    return [counts[int(math.floor(p))] for p in points]


def count_primes_between(lo: int, hi: int, cfg: SieveConfig = DEFAULT_CONFIG, jobs: int = 1,
                         backend=None) -> int:
    if hi < lo:
        return 0
    blocks = _split(lo, hi, jobs)
    return sum(_map_ordered(lambda b: count_range(b[0], b[1], cfg, backend), blocks, jobs))


_mp_contexts: dict[int, MPContext] = {}


def _log_mantissa_exact(p: int, frac_bits: int) -> int:
    ctx = _mp_contexts.get(frac_bits)
    if ctx is None:
        ctx = MPContext()
        ctx.prec = frac_bits + 64
        _mp_contexts[frac_bits] = ctx
    return int(ctx.nint(ctx.ldexp(ctx.log(p), frac_bits)))


def log_mantissa(p: int, frac_bits: int) -> int:
    """round(log(p) * 2**frac_bits), the per-prime term of theta_fx."""
    if frac_bits <= FAST_FRAC_BITS:
        return round(math.log(p) * 2.0**frac_bits)
    return _log_mantissa_exact(p, frac_bits)


def theta_range(lo: int, hi: int, frac_bits: int, cfg: SieveConfig = DEFAULT_CONFIG,
                backend=None) -> tuple[int, int]:
    """(number of primes, theta mantissa) over [lo, hi]."""
    lo, hi = int(lo), int(hi)
    if hi < max(lo, 2):
        return 0, 0
    _check_range(lo, hi)
    count, mant = 0, 0
    if lo <= 2 <= hi:
        count, mant = 1, log_mantissa(2, frac_bits)
    if hi < 3:
        return count, mant
    if frac_bits <= FAST_FRAC_BITS:
        c, m = _make(max(lo, 3), hi, cfg, backend).theta_all(frac_bits)
        return count + int(c), mant + int(m)
    for arr in iter_prime_arrays(max(lo, 3), hi, cfg, backend):
        count += arr.size
        mant += sum(_log_mantissa_exact(int(p), frac_bits) for p in arr.tolist())
    return count, mant


def stats_at(x, cfg: SieveConfig = DEFAULT_CONFIG, jobs: int = 1, checkpoint=None,
             backend=None, progress: Optional[Callable[[int], None]] = None) -> PrimeStats:
    """Exact pi(x) and fixed-point theta(x), optionally resumable.

    With ``checkpoint`` set, progress is written there every
    ``cfg.checkpoint_interval`` integers and an existing file is resumed.
    """
    x = int(math.floor(x))
    if x < 2:
        raise ValueError("stats_at needs x >= 2")
    _check_range(2, x)
    F = cfg.frac_bits
    start, pi, mant = 2, 0, 0
    if checkpoint is not None:
        ck = Checkpoint.load(checkpoint)
        if ck is not None:
            if ck.frac_bits != F:
                raise CheckpointError(f"checkpoint uses {ck.frac_bits} fractional bits, config has {F}")
            if ck.x > x:
                raise CheckpointError(f"checkpoint at {ck.x} is beyond the target {x}")
            start, pi, mant = ck.x + 1, ck.pi, ck.theta_mantissa
    if start <= x:
        blocks = _split(start, x, jobs, cap=cfg.checkpoint_interval)
        done = _map_ordered(lambda b: theta_range(b[0], b[1], F, cfg, backend), blocks, jobs)
        for (b_lo, b_hi), (c, m) in zip(blocks, done):
            pi += c
            mant += m
            if checkpoint is not None:
                Checkpoint(b_hi, pi, mant, F).save(checkpoint)
            if progress is not None:
                progress(b_hi)
    return PrimeStats(x, pi, mant, F)


def prime_stream(start: int, stop: int, cfg: SieveConfig = DEFAULT_CONFIG, checkpoint=None,
                 backend=None) -> Iterator[int]:
    """Yield the primes in [start, stop] in increasing order.

    With ``checkpoint`` set the stream records, at segment boundaries, the
    largest x whose primes have all been consumed (and pi(x)); a later call
    with the same file resumes right after it.
    """
    start, stop = int(start), int(stop)
    if start < 2:
        raise ValueError("prime_stream needs start >= 2")
    _check_range(start, stop)
    pi = None
    if checkpoint is not None:
        ck = Checkpoint.load(checkpoint)
        if ck is not None:
            if not start - 1 <= ck.x <= stop:
                raise CheckpointError(f"checkpoint at {ck.x} lies outside [{start}, {stop}]")
            start, pi = ck.x + 1, ck.pi
        else:
            pi = count_primes(start - 1, cfg, backend=backend)
    lo = start
    while lo <= stop:
        hi = min(stop, lo + cfg.checkpoint_interval - 1)
        for arr in iter_prime_arrays(lo, hi, cfg, backend):
            for p in arr.tolist():
                yield p
            if pi is not None:
                pi += arr.size
        if checkpoint is not None:
            Checkpoint(hi, pi).save(checkpoint)
        lo = hi + 1
