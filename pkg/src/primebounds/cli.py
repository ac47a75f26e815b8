"""Command-line front end.

Reports go to stdout (or --output), progress and diagnostics to stderr.
Exit codes: 0 pass, 1 failures, 2 unresolved, 64 usage error, 74 I/O error.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from typing import Optional, Sequence

from .analytic import certify_less, parse_ident, resolve, table
from .analytic.compare import Verdict
from .analytic.enclosure import Enclosure, IvMath
from .certify import (POLYS, Monotonicity, certify_monotone, certify_positive, threshold_A0_cert,
                      threshold_A1)
from .certify.thresholds import a1_quadratic_form_positive
from .errors import (CheckpointError, ConfigurationError, DomainError, MonotonicityError,
                     PrimeBoundsError, UnresolvedError)
from .numparse import parse_int, parse_real
from .sieve import SieveConfig, prime_stream, stats_at
from .verify import (EXIT_FAIL, EXIT_PASS, EXIT_UNRESOLVED, CheckKind, Point, make_task,
                     theta_envelope_check, verify_pi, verify_rnxi)

EXIT_USAGE = 64
EXIT_IO = 74

GRAMMAR = """\
primebounds sieve --to X [--from A] [--primes] [--frac-bits F] [--segment-size S]
                  [--jobs J] [--checkpoint PATH] [--output PATH]
primebounds verify --ineq ID --from A --to B [--kind lower|upper] [--strategy jump|hybrid]
                   [--jobs J] [--partitions P] [--checkpoint PATH] [--output PATH]
primebounds ramanujan --from A --to B [--jobs J] [--partitions P] [--checkpoint PATH] [--output PATH]
primebounds rnxi --n N --from A --to B [--jobs J] [--partitions P] [--checkpoint PATH] [--output PATH]
primebounds theta --bound ID --from A --to B [--output PATH]
primebounds certify --poly s|f|T|S|R --threshold Y [--method descartes|sturm] [--cert PATH]
primebounds certify --monotone ID --from A --to B
primebounds threshold A0 --n N
primebounds threshold A1 --n N --a A
primebounds eval ID --x X [--precision BITS]
primebounds compare ID ID --x X
primebounds list-bounds

Endpoints: integers, decimals, 1e9, p/q, or q*e / q*e^k (exact multiples of powers of e).
Integer flags accept 1e9 but reject 1.5e9."""


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _int_arg(text: str) -> int:
    try:
        return parse_int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _pos_int(text: str) -> int:
    v = _int_arg(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
    return v


def _real_arg(text: str) -> Fraction:
    try:
        return parse_real(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _point_arg(text: str) -> Point:
    try:
        return Point.parse(text)
    except (ValueError, ConfigurationError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _ident_arg(text: str) -> str:
    # reject unknown identifiers at parse time, before any work starts
    try:
        parse_ident(text)
    except ConfigurationError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None
    return text


def _range_opts(p, jobs=True):
    p.add_argument("--from", dest="lo", type=_point_arg, required=True)
    p.add_argument("--to", dest="hi", type=_point_arg, required=True)
    if jobs:
        p.add_argument("--jobs", type=_pos_int, default=1)
        p.add_argument("--partitions", type=_pos_int, default=1)
        p.add_argument("--checkpoint")
    p.add_argument("--output", "-o")
    p.add_argument("--quiet", "-q", action="store_true", help="no progress on stderr")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="primebounds", description="Explicit prime-counting bounds, checked rigorously.",
                 epilog=GRAMMAR, formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = ap.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("sieve", help="pi(x) and theta(x), or list primes")
    p.add_argument("--to", dest="hi", type=_int_arg, required=True)
    p.add_argument("--from", dest="lo", type=_int_arg, default=2)
    p.add_argument("--primes", action="store_true", help="list the primes in [from, to]")
    p.add_argument("--frac-bits", type=_int_arg, default=40)
    p.add_argument("--segment-size", type=_int_arg, default=1 << 17)
    p.add_argument("--jobs", type=_pos_int, default=1)
    p.add_argument("--checkpoint")
    p.add_argument("--output", "-o")
    p.add_argument("--quiet", "-q", action="store_true")

    p = sub.add_parser("verify", help="one-sided pi(x) bound over a range")
    p.add_argument("--ineq", type=_ident_arg, required=True)
    p.add_argument("--kind", choices=("lower", "upper"), default="lower")
    p.add_argument("--strategy", choices=("jump", "hybrid"), default="jump")
    _range_opts(p)

    p = sub.add_parser("ramanujan", help="pi(x)^2 < (e x / log x) pi(x/e) over a range")
    _range_opts(p)

    p = sub.add_parser("rnxi", help="generalized Ramanujan inequality of order n")
    p.add_argument("--n", type=_pos_int, required=True)
    _range_opts(p)

    p = sub.add_parser("theta", help="|theta(x) - x| < bound(x) over a range")
    p.add_argument("--bound", type=_ident_arg, required=True)
    _range_opts(p, jobs=False)

    p = sub.add_parser("certify", help="polynomial positivity or monotonicity certificate")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--poly", choices=sorted(POLYS))
    g.add_argument("--monotone", type=_ident_arg)
    p.add_argument("--threshold", type=_real_arg)
    p.add_argument("--method", choices=("descartes", "sturm"), default="descartes")
    p.add_argument("--cert", help="certificate file (default <poly>-<threshold>.cert)")
    p.add_argument("--from", dest="lo", type=_real_arg)
    p.add_argument("--to", dest="hi", type=_real_arg)

    p = sub.add_parser("threshold", help="A0(n) or A1(n, a)")
    p.add_argument("which", choices=("A0", "A1"))
    p.add_argument("--n", type=_int_arg, required=True)
    p.add_argument("--a", type=_real_arg)

    p = sub.add_parser("eval", help="enclosure of a bound function at x")
    p.add_argument("ident", type=_ident_arg)
    p.add_argument("--x", type=_point_arg, required=True)
    p.add_argument("--precision", type=_int_arg, default=128)

    p = sub.add_parser("compare", help="certify f(x) < g(x)")
    p.add_argument("f", type=_ident_arg)
    p.add_argument("g", type=_ident_arg)
    p.add_argument("--x", type=_real_arg, required=True)

    sub.add_parser("list-bounds", help="registered bound identifiers")
    return ap


# -- commands ---------------------------------------------------------------------

def _emit(text: str, path: Optional[str]) -> None:
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
        sys.stdout.flush()


def _progress(args):
    if args.quiet:
        return None

    def show(done, total, x):
        print(f"progress\t{done}/{total}\tx={x}", file=sys.stderr, flush=True)
    return show


def _cmd_sieve(args) -> int:
    cfg = SieveConfig(segment_size=args.segment_size, frac_bits=args.frac_bits)
    if args.primes:
        out = [str(p) for p in prime_stream(args.lo, args.hi, cfg, checkpoint=args.checkpoint)]
        _emit("\n".join(out) + ("\n" if out else ""), args.output)
        return EXIT_PASS
    if args.lo != 2:
        raise UsageError("--from is only meaningful with --primes")
    st = stats_at(args.hi, cfg, jobs=args.jobs, checkpoint=args.checkpoint)
    lo, hi = st.theta_bounds()
    text = (f"x\t{st.x}\npi\t{st.pi}\ntheta_mantissa\t{st.theta_fx}\nfrac_bits\t{st.frac_bits}\n"
            f"theta\t{st.theta!r}\ntheta_lo\t{float(lo)!r}\ntheta_hi\t{float(hi)!r}\n"
            f"theta_err\t{float(st.theta_err)!r}\n")
    _emit(text, args.output)
    return EXIT_PASS


def _report(rep, args) -> int:
    _emit(rep.to_tsv(), args.output)
    return rep.exit_code


def _cmd_verify(args) -> int:
    kind = CheckKind.LOWER if args.kind == "lower" else CheckKind.UPPER
    task = make_task(kind, args.lo, args.hi, args.ineq, partitions=args.partitions,
                     strategy=args.strategy)
    rep = verify_pi(task, jobs=args.jobs, checkpoint=args.checkpoint, progress=_progress(args))
    return _report(rep, args)


def _cmd_rnxi(args, n: int) -> int:
    rep = verify_rnxi(n, args.lo, args.hi, partitions=args.partitions, jobs=args.jobs,
                      checkpoint=args.checkpoint, progress=_progress(args))
    return _report(rep, args)


def _cmd_theta(args) -> int:
    return _report(theta_envelope_check(args.lo, args.hi, args.bound), args)


def _cmd_certify(args) -> int:
    if args.poly:
        if args.threshold is None:
            raise UsageError("certify --poly needs --threshold")
        cert = certify_positive(POLYS[args.poly], args.threshold, args.method)
        path = args.cert or f"{args.poly}-{args.threshold}.cert".replace("/", "_")
        with open(path, "w") as fh:
            fh.write(cert.to_text())
        sys.stdout.write(cert.to_text())
        print(f"certificate\t{path}", file=sys.stderr)
        return EXIT_PASS if cert.verdict else EXIT_FAIL
    if args.lo is None or args.hi is None:
        raise UsageError("certify --monotone needs --from and --to")
    cert = certify_monotone(resolve(args.monotone), args.lo, args.hi)
    print(f"monotone\t{args.monotone}\t[{args.lo}, {args.hi}]\t{cert.verdict.value}\t"
          f"pieces={cert.pieces}")
    if cert.verdict is Monotonicity.UNRESOLVED:
        return EXIT_UNRESOLVED
    return EXIT_PASS if cert.verdict is Monotonicity.INCREASING else EXIT_FAIL


def _cmd_threshold(args) -> int:
    if args.which == "A0":
        cert = threshold_A0_cert(args.n)
        print(f"A0\tn={args.n}\t{cert.value}\tholds_at={cert.holds_at}\tfails_below={cert.fails_below}")
        return EXIT_PASS if cert.holds_at and cert.fails_below else EXIT_UNRESOLVED
    if args.a is None:
        raise UsageError("threshold A1 needs --a")
    t = threshold_A1(args.n, args.a)
    ok = a1_quadratic_form_positive(args.n, args.a, t)
    print(f"A1\tn={args.n}\ta={args.a}\tlog_x={t}\tcertified={ok}")
    return EXIT_PASS if ok else EXIT_UNRESOLVED


def _cmd_eval(args) -> int:
    f = resolve(args.ident)
    if args.precision < 53:
        raise UsageError("--precision must be at least 53")
    x = args.x
    m = IvMath(args.precision)
    f.check_domain(x.q if x.exact else Fraction(float(x)))
    enc = Enclosure.from_iv(f(m, x.iv(m)))
    lo, hi = enc.format(30)
    print(f"{f.ident}\t{x.text()}\t{lo}\t{hi}")
    return EXIT_PASS


def _cmd_compare(args) -> int:
    c = certify_less(args.f, args.g, args.x)
    print(f"{c.verdict.value}\tprecision={c.precision}")
    return {Verdict.PROVEN_LESS: EXIT_PASS, Verdict.PROVEN_GEQ: EXIT_FAIL}.get(c.verdict, EXIT_UNRESOLVED)


def _cmd_list_bounds(args) -> int:
    rows = table()
    w = max(len(r[0]) for r in rows)
    for pattern, example, summary in rows:
        print(f"{pattern:<{w}}  {summary}  (e.g. {example})")
    return EXIT_PASS


def run(argv: Optional[Sequence[str]] = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
        cmd = args.command
        if cmd == "sieve":
            return _cmd_sieve(args)
        if cmd == "verify":
            return _cmd_verify(args)
        if cmd == "ramanujan":
            return _cmd_rnxi(args, 1)
        if cmd == "rnxi":
            return _cmd_rnxi(args, args.n)
        if cmd == "theta":
            return _cmd_theta(args)
        if cmd == "certify":
            return _cmd_certify(args)
        if cmd == "threshold":
            return _cmd_threshold(args)
        if cmd == "eval":
            return _cmd_eval(args)
        if cmd == "compare":
            return _cmd_compare(args)
        return _cmd_list_bounds(args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        print("usage:\n" + GRAMMAR, file=sys.stderr)
        return EXIT_USAGE
    except (ConfigurationError, DomainError, MonotonicityError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (CheckpointError, OSError) as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except UnresolvedError as exc:
        print(f"unresolved: {exc}", file=sys.stderr)
        return EXIT_UNRESOLVED
    except PrimeBoundsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
