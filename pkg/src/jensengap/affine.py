"""Verifiers for the affine-combination inequalities and refinement chains.

A two-sided scenario holds a left configuration (points at or below the
split point c) and a right configuration (points at or above c).  The
verifiers evaluate the Jensen gap of each side and order it against the
midpoint terms (A/2) * spread, where A is a curvature constant for which
f(x) - (A/2) x^2 is concave left of the split and convex right of it
(reversed for the 3-concave variant).

Hypothesis residuals are tagged with stable identifiers: "2.1" spread
equality, "2.2" separation at c, "2.8"/"2.10" ordering of the side extremes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .analysis import curvature_sandwich, is_3concave, is_3convex, k1_witness
from .domain import (
    EPS_EQ,
    AffineConfig,
    CheckSet,
    IntervalR,
    StructureError,
    ValidityReport,
    combination_value,
    spread,
    validate_affine_config,
)
from .funclib import DomainError, FunctionModel, d2_one_sided, eval_fn, negate
from .report import FAILS, HOLDS, UNMET, ChainReport

#: grid used for witness-constant sandwiches when no declared class applies
WITNESS_GRID = 512
#: grid used for 3-convexity/3-concavity evidence in branch (c)
THIRD_GRID = 257


@dataclass(frozen=True)
class Mt1Scenario:
    """Left/right configurations around a split point inside an interval."""

    left: AffineConfig
    right: AffineConfig
    c: float
    interval: IntervalR


def jensen_affine_gap(f: FunctionModel, cfg: AffineConfig, tol: float = EPS_EQ) -> float:
    """sum(w * f(p)) over the signed groups, minus f at the combination value.

    Nonnegative (up to tolerance) for convex f on any valid configuration.
    """
    vr = validate_affine_config(cfg, tol)
    if not vr.valid:
        raise StructureError(f"invalid affine configuration: {vr.violations[0][0]}")
    value = combination_value(cfg, tol, validate=False)
    terms = []
    for _, grp, sign in cfg.all_groups():
        for p, w in zip(grp.points, grp.weights):
            if w != 0.0:
                terms.append(sign * w * eval_fn(f, p))
    return math.fsum(terms) - eval_fn(f, value)


def cross_weighted_gap(
    f: FunctionModel, weights_from: AffineConfig, points_from: AffineConfig
) -> float:
    """Gap of the index-sharing reading: one configuration's weights applied
    to another's points.  Group sizes must match; no hull guarantee holds for
    the crossed combination, so this is an exploration quantity only."""
    for (_, wg, _), (_, pg, _) in zip(weights_from.all_groups(), points_from.all_groups()):
        if len(wg) != len(pg):
            raise StructureError("index-sharing reading needs equal group sizes")
    terms = []
    value_terms = []
    for (_, wg, sign), (_, pg, _) in zip(weights_from.all_groups(), points_from.all_groups()):
        for w, p in zip(wg.weights, pg.points):
            value_terms.append(sign * w * p)
            if w != 0.0:
                terms.append(sign * w * eval_fn(f, p))
    return math.fsum(terms) - eval_fn(f, math.fsum(value_terms))


def _side_extreme(cfg: AffineConfig, which: str) -> float:
    pts = cfg.active_points()
    return max(pts) if which == "max" else min(pts)


def _base_checkset(s: Mt1Scenario, tol: float) -> tuple[CheckSet, dict]:
    """Config validity and interval containment; returns spreads when computable."""
    cs = CheckSet(tol)
    ok_l = cs.merge("left", validate_affine_config(s.left, tol))
    ok_r = cs.merge("right", validate_affine_config(s.right, tol))
    vals: dict[str, float] = {}
    for label, cfg in (("left", s.left), ("right", s.right)):
        pts = cfg.active_points()
        if pts:  # a config with no active points already failed validation
            slack = min(min(pts) - s.interval.lo, s.interval.hi - max(pts))
            cs.at_least(f"{label}.in_interval", slack, scale=max(map(abs, pts)))
    if ok_l and ok_r:
        vals["spread_left"] = spread(s.left, tol, validate=False)
        vals["spread_right"] = spread(s.right, tol, validate=False)
        vals["max_left"] = _side_extreme(s.left, "max")
        vals["min_right"] = _side_extreme(s.right, "min")
    return cs, vals


def _mt1_checkset(s: Mt1Scenario, tol: float) -> tuple[CheckSet, dict]:
    cs, vals = _base_checkset(s, tol)
    if vals:
        cs.at_least("2.2", min(s.c - vals["max_left"], vals["min_right"] - s.c))
        sl, sr = vals["spread_left"], vals["spread_right"]
        cs.equality("2.1", sl - sr, scale=max(abs(sl), abs(sr)))
    return cs, vals


def check_mt1_hypotheses(s: Mt1Scenario, tol: float = EPS_EQ) -> ValidityReport:
    """Config validity, separation at c ("2.2"), spread equality ("2.1")."""
    return _mt1_checkset(s, tol)[0].report()


def verify_mt1(
    f: FunctionModel,
    s: Mt1Scenario,
    A: float | None = None,
    tol: float = EPS_EQ,
    grid_n: int = WITNESS_GRID,
    weight_reading: str = "matched",
) -> ChainReport:
    """Four-term chain: gap_left <= (A/2) spread_left = (A/2) spread_right <= gap_right.

    Requires matched spreads and separation at c; f must be 3-convex at c
    with constant A (supplied, declared, or classified).

    ``weight_reading`` selects how the right gap is evaluated: "matched"
    (default) uses the right configuration's own weights, which is what the
    spread-equality hypothesis is stated with; "literal_alpha" reuses the
    left configuration's weights on the right points, the index-sharing
    reading kept for hypothesis exploration.
    """
    if weight_reading not in ("matched", "literal_alpha"):
        raise StructureError(f"unknown weight reading {weight_reading!r}")
    details: dict = {"c": s.c, "weight_reading": weight_reading}
    cs, vals = _mt1_checkset(s, tol)
    if weight_reading == "literal_alpha":
        sizes_ok = all(
            len(wg) == len(pg)
            for (_, wg, _), (_, pg, _) in zip(s.left.all_groups(), s.right.all_groups())
        )
        cs.record("literal_alpha.sizes", 0.0, sizes_ok)
    if not cs.ok:
        return ChainReport(UNMET, hypotheses=cs.report(), details=details)
    if A is None:
        A = k1_witness(f, s.c, s.interval, grid_n, tol)
        cs.record("witness.K1c", 0.0 if A is None else A, A is not None)
        if A is None:
            return ChainReport(UNMET, hypotheses=cs.report(), details=details)
    gap_l = jensen_affine_gap(f, s.left, tol)
    if weight_reading == "literal_alpha":
        gap_r = cross_weighted_gap(f, s.left, s.right)
    else:
        gap_r = jensen_affine_gap(f, s.right, tol)
    sl, sr = vals["spread_left"], vals["spread_right"]
    mid_l, mid_r = 0.5 * A * sl, 0.5 * A * sr
    margins = (mid_l - gap_l, mid_r - mid_l, gap_r - mid_r)
    verdict = HOLDS if min(margins) >= -tol else FAILS
    details["A"] = A
    return ChainReport(
        verdict,
        gap_left=gap_l,
        gap_right=gap_r,
        spread_left=sl,
        spread_right=sr,
        mid_left=mid_l,
        mid_right=mid_r,
        margins=margins,
        hypotheses=cs.report(),
        details=details,
    )


def _signed_witness(
    f: FunctionModel,
    s: Mt1Scenario,
    a_tt: float,
    r_tt: float,
    sign: str,
    kinds: tuple[str, ...],
    grid_n: int,
    tol: float,
) -> float | None:
    """Witness constant restricted to a sign regime ("nonneg" or "nonpos").

    Declared metadata is used when its anchor lies in [a_tt, r_tt] and its
    constant has the required sign; otherwise the dd2 sandwich over
    [lo, a_tt] and [r_tt, hi] is intersected with the regime.
    """
    want_k1 = "K1c" in kinds

    def fits(value: float) -> bool:
        return value >= -tol if sign == "nonneg" else value <= tol

    kc = f.known_class
    if (
        kc is not None
        and kc.kind in kinds
        and a_tt - tol <= kc.c <= r_tt + tol
        and fits(kc.A)
    ):
        return kc.A
    target = f if want_k1 else negate(f)
    try:
        sand = curvature_sandwich(target, s.interval, a_tt, r_tt, grid_n, tol)
    except (StructureError, DomainError):
        return None
    lo, hi = (sand.lo, sand.hi) if want_k1 else (-sand.hi, -sand.lo)
    if sign == "nonneg":
        lo = max(lo, 0.0)
    else:
        hi = min(hi, 0.0)
    if lo > hi + tol:
        return None
    return _finite_midpoint(lo, hi)


def _finite_midpoint(lo: float, hi: float) -> float:
    if math.isfinite(lo) and math.isfinite(hi):
        return 0.5 * (lo + hi)
    if math.isfinite(lo):
        return lo
    if math.isfinite(hi):
        return hi
    return 0.0


def _one_sided_or_none(f: FunctionModel, x: float, side: str) -> float | None:
    try:
        return d2_one_sided(f, x, side)
    except (DomainError, ValueError):
        return None


def verify_mt2(
    f: FunctionModel,
    s: Mt1Scenario,
    branch: str = "auto",
    *,
    grid_n: int = WITNESS_GRID,
    third_grid: int = THIRD_GRID,
    tol: float = EPS_EQ,
) -> ChainReport:
    """Chain under the weakened hypotheses for f 3-convex at some point
    between the side extremes.

    Branch gates (auto tries a, b, c in order):
      a: left second derivative at the left maximum >= 0 and spread_left <= spread_right
      b: right second derivative at the right minimum <= 0 and spread_left >= spread_right
      c: the two one-sided values straddle 0 strictly and f is 3-convex on
         the interval (witness constant 0).
    """
    if branch not in ("auto", "a", "b", "c"):
        raise StructureError(f"unknown branch {branch!r}")
    cs, vals = _base_checkset(s, tol)
    if not cs.ok:
        return ChainReport(UNMET, hypotheses=cs.report(), details={"branch": branch})
    a_tt, r_tt = vals["max_left"], vals["min_right"]
    sl, sr = vals["spread_left"], vals["spread_right"]
    if not cs.at_least("2.8", r_tt - a_tt, scale=max(abs(a_tt), abs(r_tt))):
        return ChainReport(UNMET, hypotheses=cs.report(), details={"branch": branch})
    d2m = _one_sided_or_none(f, a_tt, "minus")
    d2p = _one_sided_or_none(f, r_tt, "plus")
    spread_scale = max(abs(sl), abs(sr))

    def gate(b: str) -> bool:
        if b == "a":
            return d2m is not None and d2m >= -tol and sl <= sr + tol * max(1.0, spread_scale)
        if b == "b":
            return d2p is not None and d2p <= tol and sr <= sl + tol * max(1.0, spread_scale)
        return (
            d2m is not None
            and d2p is not None
            and d2m < 0.0 < d2p
            and is_3convex(f, s.interval, third_grid, tol)
        )

    candidates = ("a", "b", "c") if branch == "auto" else (branch,)
    gates = {b: gate(b) for b in candidates}
    chosen = next((b for b in candidates if gates[b]), None)
    details: dict = {
        "branch": chosen,
        "max_left": a_tt,
        "min_right": r_tt,
        "d2_minus_at_max_left": d2m,
        "d2_plus_at_min_right": d2p,
    }
    for b in candidates:
        cs.record(f"branch.{b}", 0.0, gates[b])
    if chosen is None:
        return ChainReport(UNMET, hypotheses=cs.report(), details=details)
    if chosen == "c":
        A = 0.0
    else:
        sign = "nonneg" if chosen == "a" else "nonpos"
        A = _signed_witness(f, s, a_tt, r_tt, sign, ("K1c", "both"), grid_n, tol)
        cs.record("witness.K1c", 0.0 if A is None else A, A is not None)
        if A is None:
            return ChainReport(UNMET, hypotheses=cs.report(), details=details)
    gap_l = jensen_affine_gap(f, s.left, tol)
    gap_r = jensen_affine_gap(f, s.right, tol)
    mid_l, mid_r = 0.5 * A * sl, 0.5 * A * sr
    margins = (mid_l - gap_l, mid_r - mid_l, gap_r - mid_r)
    verdict = HOLDS if min(margins) >= -tol else FAILS
    details["A"] = A
    return ChainReport(
        verdict,
        gap_left=gap_l,
        gap_right=gap_r,
        spread_left=sl,
        spread_right=sr,
        mid_left=mid_l,
        mid_right=mid_r,
        margins=margins,
        hypotheses=cs.report(),
        details=details,
    )


def verify_mt3(
    f: FunctionModel,
    s: Mt1Scenario,
    branch: str = "auto",
    *,
    c_convention: str = "mirrored",
    grid_n: int = WITNESS_GRID,
    third_grid: int = THIRD_GRID,
    tol: float = EPS_EQ,
) -> ChainReport:
    """Reversed chain for f 3-concave at some point between the side extremes:
    gap_left >= (A/2) spread_left >= (A/2) spread_right >= gap_right.

    Branch gates follow the stated hypotheses verbatim (a: left second
    derivative <= 0 with spread_left >= spread_right; b: right second
    derivative >= 0 with spread_left <= spread_right); for constants of
    nonzero sign these gates can admit scenarios whose middle ordering
    genuinely fails, and the verifier reports exactly that.

    Branch (c) has two sign conventions: "printed" requires the one-sided
    values to straddle 0 upward (d2m < 0 < d2p) as stated, "mirrored" (the
    default) requires the downward straddle natural for 3-concave functions.
    The report records which was used, and the computed constant is recorded
    against both sandwich orientations in ``details``.
    """
    if branch not in ("auto", "a", "b", "c"):
        raise StructureError(f"unknown branch {branch!r}")
    if c_convention not in ("mirrored", "printed"):
        raise StructureError(f"unknown c_convention {c_convention!r}")
    cs, vals = _base_checkset(s, tol)
    if not cs.ok:
        return ChainReport(UNMET, hypotheses=cs.report(), details={"branch": branch})
    a_tt, r_tt = vals["max_left"], vals["min_right"]
    sl, sr = vals["spread_left"], vals["spread_right"]
    if not cs.at_least("2.10", r_tt - a_tt, scale=max(abs(a_tt), abs(r_tt))):
        return ChainReport(UNMET, hypotheses=cs.report(), details={"branch": branch})
    d2m = _one_sided_or_none(f, a_tt, "minus")
    d2p = _one_sided_or_none(f, r_tt, "plus")
    spread_scale = max(1.0, abs(sl), abs(sr))

    def gate(b: str) -> bool:
        if b == "a":
            return d2m is not None and d2m <= tol and sl >= sr - tol * spread_scale
        if b == "b":
            return d2p is not None and d2p >= -tol and sl <= sr + tol * spread_scale
        if d2m is None or d2p is None:
            return False
        if c_convention == "printed":
            straddle = d2m < 0.0 < d2p
        else:
            straddle = d2m > 0.0 > d2p
        return straddle and is_3concave(f, s.interval, third_grid, tol)

    candidates = ("a", "b", "c") if branch == "auto" else (branch,)
    gates = {b: gate(b) for b in candidates}
    chosen = next((b for b in candidates if gates[b]), None)
    details: dict = {
        "branch": chosen,
        "c_convention": c_convention,
        "max_left": a_tt,
        "min_right": r_tt,
        "d2_minus_at_max_left": d2m,
        "d2_plus_at_min_right": d2p,
    }
    for b in candidates:
        cs.record(f"branch.{b}", 0.0, gates[b])
    if chosen is None:
        return ChainReport(UNMET, hypotheses=cs.report(), details=details)
    if chosen == "c":
        A = 0.0
    else:
        sign = "nonpos" if chosen == "a" else "nonneg"
        A = _signed_witness(f, s, a_tt, r_tt, sign, ("K2c", "both"), grid_n, tol)
        cs.record("witness.K2c", 0.0 if A is None else A, A is not None)
        if A is None:
            return ChainReport(UNMET, hypotheses=cs.report(), details=details)
    gap_l = jensen_affine_gap(f, s.left, tol)
    gap_r = jensen_affine_gap(f, s.right, tol)
    mid_l, mid_r = 0.5 * A * sl, 0.5 * A * sr
    margins = (gap_l - mid_l, mid_l - mid_r, mid_r - gap_r)
    verdict = HOLDS if min(margins) >= -tol else FAILS
    details["A"] = A
    if d2m is not None and d2p is not None:
        details["sandwich_descending_ok"] = d2m + tol >= A >= d2p - tol
        details["sandwich_ascending_ok"] = d2m - tol <= A <= d2p + tol
    return ChainReport(
        verdict,
        gap_left=gap_l,
        gap_right=gap_r,
        spread_left=sl,
        spread_right=sr,
        mid_left=mid_l,
        mid_right=mid_r,
        margins=margins,
        hypotheses=cs.report(),
        details=details,
    )
