"""Value types for weighted affine combinations on real intervals.

An affine configuration carries two nonnegative "plus" groups and one
nonnegative "minus" group.  The group masses alpha, beta, gamma must satisfy
alpha + beta - gamma = 1 with alpha, beta in (0, 1], and every minus point
must lie in the convex hull of the two plus-group barycenters.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

#: absolute tolerance for equality constraints on normalized quantities
EPS_EQ = 1e-9


class StructureError(ValueError):
    """Malformed input: length mismatch, empty group, bad payload shape."""


@dataclass(frozen=True)
class IntervalR:
    lo: float
    hi: float

    def __post_init__(self):
        object.__setattr__(self, "lo", float(self.lo))
        object.__setattr__(self, "hi", float(self.hi))
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)):
            raise StructureError("interval endpoints must be finite")
        if self.lo > self.hi:
            raise StructureError(f"empty interval [{self.lo}, {self.hi}]")

    @property
    def width(self) -> float:
        return self.hi - self.lo

    def contains(self, x: float, tol: float = 0.0) -> bool:
        return self.lo - tol <= x <= self.hi + tol

    def contains_interval(self, other: "IntervalR", tol: float = 0.0) -> bool:
        return self.lo - tol <= other.lo and other.hi <= self.hi + tol


@dataclass(frozen=True)
class WeightedGroup:
    """Points with nonnegative weights.  May be empty (used for minus groups)."""

    points: tuple[float, ...]
    weights: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(float(p) for p in self.points))
        object.__setattr__(self, "weights", tuple(float(w) for w in self.weights))
        if len(self.points) != len(self.weights):
            raise StructureError("points and weights must have equal length")

    def __len__(self) -> int:
        return len(self.points)

    @property
    def total(self) -> float:
        return math.fsum(self.weights)

    def active_points(self) -> tuple[float, ...]:
        """Points carrying strictly positive weight."""
        return tuple(p for p, w in zip(self.points, self.weights) if w > 0.0)

    def moment(self, k: int) -> float:
        return math.fsum(w * p**k for p, w in zip(self.points, self.weights))


_EMPTY = WeightedGroup((), ())


@dataclass(frozen=True)
class AffineConfig:
    plus_a: WeightedGroup
    plus_b: WeightedGroup
    minus_c: WeightedGroup = _EMPTY

    def all_groups(self) -> tuple[tuple[str, WeightedGroup, int], ...]:
        """(label, group, sign) triples in canonical order."""
        return (
            ("plus_a", self.plus_a, 1),
            ("plus_b", self.plus_b, 1),
            ("minus_c", self.minus_c, -1),
        )

    def active_points(self) -> tuple[float, ...]:
        return (
            self.plus_a.active_points()
            + self.plus_b.active_points()
            + self.minus_c.active_points()
        )


@dataclass(frozen=True)
class Check:
    name: str
    residual: float
    ok: bool


@dataclass(frozen=True)
class ValidityReport:
    valid: bool
    violations: tuple[tuple[str, float], ...]
    checks: tuple[Check, ...] = ()


class CheckSet:
    """Accumulates named residual checks and renders them as a ValidityReport."""

    def __init__(self, tol: float = EPS_EQ):
        self.tol = tol
        self._checks: list[Check] = []

    def record(self, name: str, residual: float, ok: bool) -> bool:
        self._checks.append(Check(name, float(residual), bool(ok)))
        return ok

    def equality(self, name: str, residual: float, scale: float = 1.0) -> bool:
        """|residual| must not exceed tol * max(1, |scale|)."""
        return self.record(
            name, abs(residual), abs(residual) <= self.tol * max(1.0, abs(scale))
        )

    def at_least(self, name: str, margin: float, scale: float = 1.0) -> bool:
        """margin must be >= -tol * max(1, |scale|)."""
        return self.record(
            name, margin, margin >= -self.tol * max(1.0, abs(scale))
        )

    def merge(self, prefix: str, report: ValidityReport) -> bool:
        for c in report.checks:
            self.record(f"{prefix}.{c.name}", c.residual, c.ok)
        return report.valid

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self._checks)

    def report(self) -> ValidityReport:
        checks = tuple(self._checks)
        violations = tuple((c.name, c.residual) for c in checks if not c.ok)
        return ValidityReport(valid=not violations, violations=violations, checks=checks)


def barycenter(g: WeightedGroup) -> float:
    """Weight-normalized mean of a group; requires positive total weight."""
    total = g.total
    if total <= 0.0:
        raise StructureError("barycenter needs positive total weight")
    return math.fsum(w * p for p, w in zip(g.points, g.weights)) / total


def hull_membership(x: float, a: float, b: float, tol: float = EPS_EQ) -> bool:
    """Closed-interval membership of x in the 1-D hull of {a, b}."""
    return min(a, b) - tol <= x <= max(a, b) + tol


def _require_structure(cfg: AffineConfig) -> None:
    if len(cfg.plus_a) == 0:
        raise StructureError("plus_a group is empty")
    if len(cfg.plus_b) == 0:
        raise StructureError("plus_b group is empty")


def validate_affine_config(
    cfg: AffineConfig, tol: float = EPS_EQ, hull: str = "barycenter"
) -> ValidityReport:
    """Check every configuration invariant and report each numeric residual.

    ``hull`` selects which hull the minus points are tested against:
    "barycenter" uses conv of the two group barycenters, "pointset" uses the
    (wider) conv of all positively weighted plus points.
    """
    _require_structure(cfg)
    cs = CheckSet(tol)
    for name, grp, _ in cfg.all_groups():
        wmin = min(grp.weights) if grp.weights else 0.0
        cs.at_least(f"{name}.weights_nonneg", wmin)
    alpha = cfg.plus_a.total
    beta = cfg.plus_b.total
    gamma = cfg.minus_c.total
    cs.record("alpha_range", alpha, 0.0 < alpha <= 1.0 + tol)
    cs.record("beta_range", beta, 0.0 < beta <= 1.0 + tol)
    cs.at_least("gamma_nonneg", gamma)
    cs.equality("mass_balance", alpha + beta - gamma - 1.0)
    if alpha > 0.0 and beta > 0.0:
        if hull == "barycenter":
            h_lo, h_hi = sorted((barycenter(cfg.plus_a), barycenter(cfg.plus_b)))
        elif hull == "pointset":
            pts = cfg.plus_a.active_points() + cfg.plus_b.active_points()
            h_lo, h_hi = min(pts), max(pts)
        else:
            raise StructureError(f"unknown hull mode {hull!r}")
        worst = 0.0
        for k, (p, w) in enumerate(zip(cfg.minus_c.points, cfg.minus_c.weights)):
            if w <= 0.0:
                continue  # inert points are not hull-checked
            dist = max(h_lo - p, p - h_hi, 0.0)
            if dist > tol:
                cs.record(f"hull[{k}]", dist, False)
            worst = max(worst, dist)
        cs.record("hull", worst, worst <= tol)
    return cs.report()


def _signed_moment(cfg: AffineConfig, k: int) -> float:
    return cfg.plus_a.moment(k) + cfg.plus_b.moment(k) - cfg.minus_c.moment(k)


def combination_value(
    cfg: AffineConfig, tol: float = EPS_EQ, validate: bool = True
) -> float:
    """Signed combination sum(w*p) over plus groups minus the minus group.

    For a valid configuration the value lies in the hull of the two
    barycenters; this is re-checked as a postcondition.
    """
    if validate:
        vr = validate_affine_config(cfg, tol)
        if not vr.valid:
            raise StructureError(
                f"invalid affine configuration: {vr.violations[0][0]}"
            )
    value = _signed_moment(cfg, 1)
    a_bar = barycenter(cfg.plus_a)
    b_bar = barycenter(cfg.plus_b)
    span = max(1.0, abs(a_bar), abs(b_bar))
    if not hull_membership(value, a_bar, b_bar, tol * span):
        raise StructureError("combination value escapes the barycenter hull")
    return value


def spread(cfg: AffineConfig, tol: float = EPS_EQ, validate: bool = True) -> float:
    """Signed second moment minus squared signed first moment.

    Nonnegative (up to tolerance) for every valid configuration; transforms
    as k^2 * spread under the point map x -> k*x + t.
    """
    if validate:
        vr = validate_affine_config(cfg, tol)
        if not vr.valid:
            raise StructureError(
                f"invalid affine configuration: {vr.violations[0][0]}"
            )
    m1 = _signed_moment(cfg, 1)
    return _signed_moment(cfg, 2) - m1 * m1
