"""Exact parsing of integer and real literals, including scientific notation."""

from __future__ import annotations

import re
from fractions import Fraction

_NUM = re.compile(r"^\s*([+-]?)(\d+(?:\.\d*)?|\.\d+)(?:[eE]([+-]?\d+))?\s*$")


def parse_real(text: str) -> Fraction:
    """Decimal or scientific literal to an exact Fraction ('1.62e12', '-3/4')."""
    s = str(text).strip()
    if "/" in s:
        try:
            return Fraction(s)
        except ValueError:
            raise ValueError(f"not a number: {text!r}") from None
    m = _NUM.match(s)
    if not m:
        raise ValueError(f"not a number: {text!r}")
    sign, body, exp = m.groups()
    v = Fraction(body) * Fraction(10) ** int(exp or 0)
    return -v if sign == "-" else v


def parse_int(text: str) -> int:
    """Integer literal; '1e9' is allowed, '1.5e9' (non-integer mantissa) is not."""
    s = str(text).strip()
    m = _NUM.match(s)
    if "/" in s or not m:
        raise ValueError(f"not an integer: {text!r}")
    body = m.group(2)
    if "." in body and body.split(".", 1)[1].strip("0"):
        raise ValueError(f"not an integer (fractional mantissa): {text!r}")
    v = parse_real(s)
    if v.denominator != 1:
        raise ValueError(f"not an integer: {text!r}")
    return v.numerator
