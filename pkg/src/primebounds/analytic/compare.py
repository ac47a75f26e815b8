"""Scalar evaluation and strict-inequality certification with escalation."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from ..errors import UnresolvedError
from .enclosure import PRECISIONS, Enclosure, IvMath, to_iv
from .functions import BoundFunction
from .registry import resolve


class Verdict(enum.Enum):
    PROVEN_LESS = "ProvenLess"
    PROVEN_GEQ = "ProvenGeq"
    UNRESOLVED = "Unresolved"


@dataclass(frozen=True)
class Comparison:
    verdict: Verdict
    precision: int          # precision that decided it, or the cap
    lhs: Optional[Enclosure]
    rhs: Optional[Enclosure]


def _as_exact(x):
    if isinstance(x, Enclosure):
        return None
    if isinstance(x, str):
        from ..numparse import parse_real
        return parse_real(x)
    if isinstance(x, float):
        return Fraction(x)
    return Fraction(x)


def evaluate_iv(f: BoundFunction, m: IvMath, x):
    exact = _as_exact(x)
    if exact is not None:
        f.check_domain(exact)
        return f(m, to_iv(m.ctx, exact))
    f.check_domain(x.lo_fraction())
    return f(m, to_iv(m.ctx, x))


def eval(f, x, precision: int = 128) -> Enclosure:
    """Enclosure of f(x); ``f`` may be a BoundFunction or an identifier string."""
    if precision < 53:
        raise ValueError("precision must be at least 53 bits")
    f = resolve(f)
    m = IvMath(precision)
    return Enclosure.from_iv(evaluate_iv(f, m, x))


def certify_less(f, g, x, cap: int = PRECISIONS[-1]) -> Comparison:
    """Decide f(x) < g(x) by interval evaluation at 53, 128, 256, 512 bits."""
    f, g = resolve(f), resolve(g)
    last = (None, None)
    for prec in PRECISIONS:
        if prec > cap:
            break
        m = IvMath(prec)
        try:
            a = evaluate_iv(f, m, x)
            b = evaluate_iv(g, m, x)
        except UnresolvedError:
            continue
        ea, eb = Enclosure.from_iv(a), Enclosure.from_iv(b)
        last = (ea, eb)
        if a.b < b.a:
            return Comparison(Verdict.PROVEN_LESS, prec, ea, eb)
        if a.a >= b.b:
            return Comparison(Verdict.PROVEN_GEQ, prec, ea, eb)
    return Comparison(Verdict.UNRESOLVED, min(cap, PRECISIONS[-1]), *last)
