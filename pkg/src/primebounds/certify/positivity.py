"""Positivity of an integer polynomial on a half-line [y0, oo)."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from ..errors import CheckpointError
from .poly import IntPoly
from .roots import RootInterval, SturmSequence, isolate_real_roots, refine

CERT_HEADER = "positivity-certificate v1"


@dataclass(frozen=True)
class PositivityCert:
    poly: IntPoly
    threshold: Fraction
    isolated_roots: tuple[RootInterval, ...]
    verdict: bool
    value_at_threshold: Fraction
    witness: Optional[RootInterval] = field(default=None)

    @property
    def largest_root(self) -> Optional[RootInterval]:
        return self.isolated_roots[-1] if self.isolated_roots else None

    def to_text(self) -> str:
        lines = [
            CERT_HEADER,
            f"poly-ascending: {self.poly.to_text()}",
            f"poly: {self.poly}",
            f"threshold: {self.threshold}",
            f"value-at-threshold: {self.value_at_threshold}",
            f"roots: {len(self.isolated_roots)}",
        ]
        for r in self.isolated_roots:
            lines.append(f"root: {r.lo} {r.hi}")
        if self.witness is not None:
            lines.append(f"witness: {self.witness.lo} {self.witness.hi}")
        lines.append(f"verdict: {'true' if self.verdict else 'false'}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "PositivityCert":
        rows = [ln for ln in text.splitlines() if ln.strip()]
        if not rows or rows[0] != CERT_HEADER:
            raise CheckpointError("not a positivity certificate")
        fields: dict[str, list[str]] = {}
        for ln in rows[1:]:
            key, sep, val = ln.partition(":")
            if not sep:
                raise CheckpointError(f"malformed certificate line {ln!r}")
            fields.setdefault(key.strip(), []).append(val.strip())
        try:
            poly = IntPoly.from_text(fields["poly-ascending"][0])
            roots = tuple(RootInterval(*(Fraction(t) for t in r.split())) for r in fields.get("root", []))
            if len(roots) != int(fields["roots"][0]):
                raise CheckpointError("root count mismatch")
            wit = fields.get("witness")
            return cls(
                poly=poly,
                threshold=Fraction(fields["threshold"][0]),
                isolated_roots=roots,
                verdict=fields["verdict"][0] == "true",
                value_at_threshold=Fraction(fields["value-at-threshold"][0]),
                witness=RootInterval(*(Fraction(t) for t in wit[0].split())) if wit else None,
            )
        except (KeyError, ValueError, TypeError) as exc:
            raise CheckpointError(f"malformed certificate: {exc}") from None

    def recheck(self) -> bool:
        """Re-derive the verdict with Sturm sequences, independent of the stored roots."""
        p = self.poly
        y0 = self.threshold
        if p(y0) != self.value_at_threshold:
            return False
        sf = p.squarefree()
        roots_from_y0 = 0 if sf.degree <= 0 else SturmSequence(sf).count(y0, None) + (sf(y0) == 0)
        truth = p(y0) > 0 and roots_from_y0 == 0
        if truth != self.verdict:
            return False
        for r in self.isolated_roots:
            if r.exact:
                if p(r.lo) != 0:
                    return False
            elif SturmSequence(sf).count(r.lo, r.hi) - (sf(r.hi) == 0) != 1:
                return False
        return True


def certify_positive(p: IntPoly, y0, method: str = "descartes") -> PositivityCert:
    """Certificate that p(y) > 0 for all real y >= y0 (verdict False otherwise).

    All real roots are isolated; the verdict is true iff each lies strictly
    below y0 and p(y0) > 0.  A false verdict carries a witness root >= y0
    when one exists.
    """
    if p.is_zero():
        raise ValueError("p must be nonzero")
    y0 = Fraction(y0)
    roots = isolate_real_roots(p, None, method)
    # separate any interval straddling y0
    fixed = []
    for r in roots:
        while not r.exact and r.lo < y0 < r.hi:
            if p(y0) == 0:
                r = RootInterval(y0, y0)
                break
            r = refine(p, r, (r.hi - r.lo) / 2)
        fixed.append(r)
    value = Fraction(p(y0))
    above = [r for r in fixed if r.lo >= y0]
    verdict = value > 0 and not above
    return PositivityCert(p, y0, tuple(fixed), verdict, value, above[-1] if above else None)
