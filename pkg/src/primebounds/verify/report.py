"""Check tasks, reports and the TSV report format."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional

from ..analytic.enclosure import Enclosure, IvMath
from ..analytic.functions import BoundFunction
from ..errors import ConfigurationError
from .points import Point

EXIT_PASS, EXIT_FAIL, EXIT_UNRESOLVED = 0, 1, 2
DIGITS = 22


class CheckKind(enum.Enum):
    LOWER = "LowerBoundPi"
    UPPER = "UpperBoundPi"
    RAMANUJAN = "Ramanujan"
    RNXI = "RnXi"
    THETA = "ThetaEnvelope"


STRATEGIES = ("jump", "hybrid")


@dataclass(frozen=True)
class CheckTask:
    kind: CheckKind
    lo: Point
    hi: Point
    bound: Optional[BoundFunction] = None
    n: int = 1
    partitions: int = 1
    strategy: str = "jump"

    def __post_init__(self):
        object.__setattr__(self, "lo", Point.coerce(self.lo))
        object.__setattr__(self, "hi", Point.coerce(self.hi))
        if self.hi < self.lo:
            raise ConfigurationError(f"inverted range [{self.lo}, {self.hi}]")
        if self.partitions < 1:
            raise ConfigurationError("partitions must be positive")
        if self.strategy not in STRATEGIES:
            raise ConfigurationError(f"unknown strategy {self.strategy!r}")
        if self.kind in (CheckKind.LOWER, CheckKind.UPPER, CheckKind.THETA) and self.bound is None:
            raise ConfigurationError(f"{self.kind.value} needs a bound function")
        if self.lo < 2:
            raise ConfigurationError("ranges must start at 2 or above")

    @property
    def label(self) -> str:
        return f"RnXi({self.n})" if self.kind is CheckKind.RNXI else self.kind.value

    def signature(self) -> str:
        """Identifies the work (not its partitioning) for checkpoint validation."""
        bound = self.bound.ident if self.bound is not None else "-"
        return "|".join([self.label, bound, self.lo.key(), self.hi.key(), self.strategy])


@dataclass(frozen=True)
class Record:
    """One report line: the point and both sides of the inequality there.

    ``lhs`` is always the prime-counting side (pi(x), or pi(x)^(2^n) for the
    Ramanujan kinds) and ``rhs`` the other side.
    """

    x: Point
    lhs: Enclosure
    rhs: Enclosure
    # right end of the failure interval started at x (Ramanujan kinds)
    end: Optional[tuple[Point, Point]] = None


@dataclass
class CheckReport:
    task: CheckTask
    breakpoints_checked: int
    failures: list[Record]
    unresolved: list[Record]
    closest: Optional[Record] = None
    wall_time: float = 0.0
    resumed_from: Optional[str] = None
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures and not self.unresolved

    @property
    def exit_code(self) -> int:
        if self.failures:
            return EXIT_FAIL
        if self.unresolved:
            return EXIT_UNRESOLVED
        return EXIT_PASS

    @property
    def status(self) -> str:
        return {EXIT_PASS: "PASS", EXIT_FAIL: "FAIL", EXIT_UNRESOLVED: "UNRESOLVED"}[self.exit_code]

    def to_tsv(self, wall_time: bool = True) -> str:
        t = self.task
        out = [f"# kind\t{t.label}"]
        if t.bound is not None:
            out.append(f"# bound\t{t.bound.ident}")
        out.append(f"# range\t[{t.lo}, {t.hi}]")
        if t.kind in (CheckKind.LOWER, CheckKind.UPPER):
            out.append(f"# strategy\t{t.strategy}")
        out.extend(f"# {n}" for n in self.notes)
        out.append(f"# breakpoints_checked\t{self.breakpoints_checked}")
        out.append(f"# failures\t{len(self.failures)}")
        out.append(f"# unresolved\t{len(self.unresolved)}")
        for rec in self.failures:
            out.append(_line("FAIL", rec))
            if rec.end is not None:
                out.append("\t".join(["# FAIL-INTERVAL", rec.x.text(), *_end_text(rec.end)]))
        for rec in self.unresolved:
            out.append(_line("UNRESOLVED", rec))
        if self.passed and self.closest is not None:
            out.append(_line("PASS-SUMMARY", self.closest))
        out.append(f"# status\t{self.status}")
        if wall_time:
            out.append(f"# wall_time\t{self.wall_time:.3f}")
        return "\n".join(out) + "\n"


def _line(status: str, rec: Record) -> str:
    a, b = rec.lhs.format(DIGITS)
    c, d = rec.rhs.format(DIGITS)
    return "\t".join([status, rec.x.text(), a, b, c, d])


def _end_text(end: tuple[Point, Point]) -> tuple[str, str]:
    lo, hi = end
    if lo == hi:
        return lo.text(), hi.text()
    m = IvMath(128)
    return (Enclosure.from_iv(lo.iv(m)).format(DIGITS)[0],
            Enclosure.from_iv(hi.iv(m)).format(DIGITS)[1])


def strip_wall_time(tsv: str) -> str:
    return "".join(ln for ln in tsv.splitlines(True) if not ln.startswith("# wall_time"))
