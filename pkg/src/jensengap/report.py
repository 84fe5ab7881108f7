"""Verification reports shared by the affine and functional verifiers."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .domain import ValidityReport

HOLDS = "holds"
FAILS = "fails"
UNMET = "hypotheses-unmet"


class HypothesesUnmet(Exception):
    """Preconditions of a verifier failed; carries (constraint, residual) pairs."""

    def __init__(self, violations, full_report: ValidityReport | None = None):
        self.violations = tuple(violations)
        self.full_report = full_report
        names = ", ".join(name for name, _ in self.violations) or "unspecified"
        super().__init__(f"hypotheses unmet: {names}")


@dataclass(frozen=True)
class ChainReport:
    """Outcome of a chain verification.

    ``margins`` are the slacks that determine the verdict; refinement values
    that are reported but do not gate the verdict live in ``details``.
    Fields that do not apply to a particular verifier are NaN.
    """

    verdict: str
    gap_left: float = math.nan
    gap_right: float = math.nan
    spread_left: float = math.nan
    spread_right: float = math.nan
    mid_left: float = math.nan
    mid_right: float = math.nan
    margins: tuple[float, ...] = ()
    hypotheses: ValidityReport | None = None
    details: dict = field(default_factory=dict)

    @property
    def chain(self) -> tuple[float, ...]:
        vals = (self.gap_left, self.mid_left, self.mid_right, self.gap_right)
        return tuple(v for v in vals if not math.isnan(v))

    @property
    def margin(self) -> float:
        return min(self.margins) if self.margins else math.nan

    @property
    def holds(self) -> bool:
        return self.verdict == HOLDS


def verdict_from_margins(margins, tol: float) -> str:
    return HOLDS if min(margins) >= -tol else FAILS
