"""String identifiers for bound functions (``name`` or ``name:key=value,...``)."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from ..errors import ConfigurationError
from . import functions as F


def _int(text: str) -> int:
    from ..numparse import parse_int
    return parse_int(text)


def _real(text: str) -> Fraction:
    from ..numparse import parse_real
    return parse_real(text)


@dataclass(frozen=True)
class Entry:
    name: str
    params: dict          # key -> parser
    build: Callable
    summary: str
    example: str


_SERIES_A = {"n": _int, "a": _real}

ENTRIES: dict[str, Entry] = {e.name: e for e in [
    Entry("li", {}, lambda: F.li_fn(), "logarithmic integral", "li"),
    Entry("li-offset", {}, lambda: F.li_offset(), "li(x) - li(2)", "li-offset"),
    Entry("eq1.7-rhs", {}, lambda: F.x_over_log(), "x / log x", "eq1.7-rhs"),
    Entry("pan", {"m": _int}, lambda m: F.panaitopol(m),
          "x / (log x - 1 - k_1/log x - ... - k_m/log^m x)", "pan:m=2"),
    Entry("thm1.1-rhs", {}, lambda: F.panaitopol(2, "thm1.1-rhs"),
          "x / (log x - 1 - 1/log x - 3/log^2 x)", "thm1.1-rhs"),
    Entry("thm1.1-f", {}, lambda: F.rational([1, 3, 13, -580044], "thm1.1-f"),
          "x / (log x - 1 - 1/log x - 3/log^2 x - 13/log^3 x + 580044/log^4 x)", "thm1.1-f"),
    Entry("axler2017-thm3.8", {}, lambda: F.rational(
        ["1", "2.85", "13.15", "70.7", "458.7275", "3428.7225"], "axler2017-thm3.8"),
        "rational lower bound with decimal coefficients, valid from 19033744403", "axler2017-thm3.8"),
    Entry("xlog", {"m": _int}, lambda m: F.log_series(m),
          "sum_(k<=m) (k-1)! x/log^k x", "xlog:m=3"),
    Entry("g1", {"n": _int}, lambda n: F.log_series(n, f"g1:n={n}"),
          "same as xlog:m=n (the bound whose threshold is g_1(n))", "g1:n=3"),
    Entry("eq4.11-rhs", {}, lambda: F.log_series(4, "eq4.11-rhs"),
          "x/log x + x/log^2 x + 2x/log^3 x + 6x/log^4 x", "eq4.11-rhs"),
    Entry("eq2.5-env", {}, lambda: F.theta_envelope(), "theta envelope with R = 5.573412", "eq2.5-env"),
    Entry("cor2.2-env", {}, lambda: F.power_envelope(580115, 5, "cor2.2-env"),
          "580115 x / log^5 x", "cor2.2-env"),
    Entry("env", {"eta": _real, "k": _int}, lambda eta, k: F.power_envelope(eta, k),
          "eta x / log^k x", "env:eta=100,k=4"),
    Entry("a", {"n": _int}, lambda n: F.a_n(n), "a_n(x)", "a:n=4"),
    Entry("prop4.1-rhs", {}, lambda: F.prop41_rhs(),
          "upper bound for the integral of a_n(t)/log^(n+2) t over [3, x]", "prop4.1-rhs"),
    Entry("decay-c", {}, lambda: F.decay_c(), "c x / (log^(3/4) x exp(sqrt(log x / R)))", "decay-c"),
    Entry("eq4.4", {}, lambda: F.li_minus_decay(), "li lower bound for pi", "eq4.4"),
    Entry("eq4.5", {}, lambda: F.li_plus_decay(), "li upper bound for pi", "eq4.5"),
    Entry("eq4.7", {"n": _int}, lambda n: F.series_minus_decay(n), "series lower bound for pi", "eq4.7:n=4"),
    Entry("eq4.8", {"n": _int}, lambda n: F.series_upper(n), "series upper bound for pi", "eq4.8:n=2"),
    Entry("eq6.1", _SERIES_A, lambda n, a: F.series_lower_a(n, a),
          "series lower bound with parameter a", "eq6.1:n=6,a=14.4086"),
    Entry("eq6.2", _SERIES_A, lambda n, a: F.series_upper_a(n, a),
          "series upper bound with parameter a", "eq6.2:n=6,a=14.4086"),
    Entry("eq3.6-lhs", {}, lambda: F.rh_lower(), "li(x) - sqrt(x) log x / (8 pi)", "eq3.6-lhs"),
    Entry("eq3.6-rhs", {}, lambda: F.panaitopol(2, "eq3.6-rhs"),
          "same as thm1.1-rhs", "eq3.6-rhs"),
    Entry("eq3.6-h", {}, lambda: F.h_fn(), "-log^8 x + pi sqrt(x) (208 log^2 x + 96 log x + 144)", "eq3.6-h"),
    Entry("ram", {}, lambda: F.ram(), "Ram(x)", "ram"),
    Entry("ram-deriv", {}, lambda: F.ram_deriv(), "closed form of Ram'(t)", "ram-deriv"),
    Entry("xi", {"n": _int}, lambda n: F.xi(n), "Xi_n(x)", "xi:n=3"),
    Entry("rnxi-coef", {"n": _int}, lambda n: F.rnxi_log_coef(n),
          "log of e^n / Xi_n(x) (x/log x)^(2^n - 1)", "rnxi-coef:n=2"),
    Entry("J", {"k": _int, "eta": _real, "x1": _int},
          lambda k, eta, x1: F.j_function(F.bound_spec(k, eta, x1)),
          "J-function; eta > 0 gives the upper bound, eta < 0 the lower", "J:k=4,eta=100,x1=70111"),
]}


@dataclass(frozen=True)
class ParsedIdent:
    name: str
    args: tuple  # (key, value) in declaration order

    def build(self) -> F.BoundFunction:
        return ENTRIES[self.name].build(*[v for _, v in self.args])


def parse_ident(text: str) -> ParsedIdent:
    """Validate an identifier without building it (no sieving, no evaluation)."""
    name, _, rest = text.strip().partition(":")
    entry = ENTRIES.get(name)
    if entry is None:
        raise ConfigurationError(f"unknown bound function {name!r}; see list-bounds")
    given: dict[str, str] = {}
    if rest:
        for part in rest.split(","):
            key, eq, val = part.partition("=")
            key = key.strip()
            if not eq or not key:
                raise ConfigurationError(f"malformed parameter {part!r} in {text!r}")
            if key in given:
                raise ConfigurationError(f"duplicate parameter {key!r} in {text!r}")
            given[key] = val.strip()
    unknown = set(given) - set(entry.params)
    missing = set(entry.params) - set(given)
    if unknown:
        raise ConfigurationError(f"{name}: unknown parameter(s) {sorted(unknown)}")
    if missing:
        raise ConfigurationError(f"{name}: missing parameter(s) {sorted(missing)}")
    args = []
    for key, conv in entry.params.items():
        try:
            args.append((key, conv(given[key])))
        except ValueError as exc:
            raise ConfigurationError(f"{name}: bad value for {key}: {exc}") from None
    _check_args(name, dict(args))
    return ParsedIdent(name, tuple(args))


def _check_args(name: str, args: dict) -> None:
    n = args.get("n", args.get("m"))
    if name in ("xlog", "g1", "xi", "rnxi-coef", "eq4.7", "eq4.8", "eq6.1", "eq6.2", "a") and n < 1:
        raise ConfigurationError(f"{name}: order must be positive")
    if name == "pan" and n < 0:
        raise ConfigurationError("pan: m must be non-negative")
    if name in ("eq6.1", "eq6.2") and args["a"] <= 0:
        raise ConfigurationError(f"{name}: a must be positive")
    if name == "J":
        if args["k"] < 1:
            raise ConfigurationError("J: k must be positive")
        if args["x1"] < 2:
            raise ConfigurationError("J: x1 must be at least 2")
        if args["eta"] == 0:
            raise ConfigurationError("J: eta must be nonzero")


def resolve(text) -> F.BoundFunction:
    """Identifier (or an already built BoundFunction) to a BoundFunction."""
    if isinstance(text, F.BoundFunction):
        return text
    return parse_ident(text).build()


def table() -> list[tuple[str, str, str]]:
    """(identifier pattern, example, summary) rows for every registered family."""
    rows = []
    for e in ENTRIES.values():
        pattern = e.name if not e.params else e.name + ":" + ",".join(f"{k}=<{k}>" for k in e.params)
        rows.append((pattern, e.example, e.summary))
    return rows
