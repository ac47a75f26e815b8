"""Compiled kernel vs numpy fallback on the hot sieve paths.

    python3 benchmarks/bench_sieve.py --to 1e8 --repeat 3
"""

import argparse
import time

from primebounds._kernel import BACKENDS
from primebounds.numparse import parse_int
from primebounds.sieve import DEFAULT_CONFIG, count_range, primes_between, theta_range


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def agree(name, a, b):
    if name != "theta_range":
        return a == b
    # the two log implementations may round single terms differently;
    # each mantissa is within pi * 2 units of the true value
    return a[0] == b[0] and abs(a[1] - b[1]) <= 4 * a[0]


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--to", type=parse_int, default=10**8)
    ap.add_argument("--window", type=parse_int, default=10**7, help="width of the primes_between window")
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    hi = args.to
    lo = max(2, hi - args.window + 1)
    cases = [
        ("count_range", lambda b: count_range(2, hi, DEFAULT_CONFIG, b)),
        ("theta_range", lambda b: theta_range(2, hi, 40, DEFAULT_CONFIG, b)),
        ("primes_between", lambda b: int(primes_between(lo, hi, DEFAULT_CONFIG, b).size)),
    ]
    print(f"{'kernel':<16}{'backend':<10}{'seconds':>10}{'speedup':>10}  result")
    for name, fn in cases:
        base = None
        results = {}
        for backend in ("python", "compiled"):
            if backend not in BACKENDS:
                print(f"{name:<16}{backend:<10}{'n/a':>10}")
                continue
            t, out = best_of(lambda: fn(backend), args.repeat)
            results[backend] = out
            base = base or t
            print(f"{name:<16}{backend:<10}{t:>10.3f}{base / t:>9.2f}x  {out}")
        if len(results) == 2 and not agree(name, *results.values()):
            raise SystemExit(f"{name}: backends disagree")


if __name__ == "__main__":
    main()
