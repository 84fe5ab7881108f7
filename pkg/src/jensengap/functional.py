"""Positive linear functionals as finite nonnegative weight vectors, and the
verifiers for the functional-form inequalities.

A functional is a nonnegative weight vector over a finite sample domain;
it is unital when its weights sum to 1.  Functions on the domain are plain
value vectors of matching length.

Two range regimes exist for the split-point verifiers (mt4, mt5, mc1, mc2,
mc3).  "literal" applies the range constraints exactly as stated: one shared
inner interval with the outer functions anywhere outside it.  The default
"region_restricted" additionally confines the first pair (or the unstarred
family, or the g-side) to the closed half-line left of the split point c and
the second pair to the right half, which is the configuration the two-sided
concavity/convexity argument needs.  The literal regime admits genuine
violations and is kept for hypothesis exploration; reports label the mode.

Hypothesis residuals carry stable tags: "1.4"/"1.7"/"1.9"/"1.11" for the
mean constraints of the convex forms, "2.12", "2.17", "2.19", "2.20",
"2.22", "2.25", "2.26" for the mean/second-moment constraints of the
split-point forms, "2.23" for the aggregate inclusions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .analysis import convexity_margin, k1_witness
from .domain import (
    EPS_EQ,
    CheckSet,
    IntervalR,
    StructureError,
    ValidityReport,
)
from .funclib import FunctionModel, eval_fn
from .report import FAILS, HOLDS, UNMET, ChainReport, HypothesesUnmet

#: grid for convexity evidence of the section-1 style verifiers
CONVEXITY_GRID = 257
#: grid for witness-constant classification
WITNESS_GRID = 512


@dataclass(frozen=True)
class SampleDomain:
    """Finite sample domain {1..size}."""

    size: int

    def __post_init__(self):
        if self.size < 1:
            raise StructureError("sample domain must have at least one point")


@dataclass(frozen=True)
class FunctionOnOmega:
    values: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))
        if not self.values:
            raise StructureError("a function needs at least one value")
        if not all(math.isfinite(v) for v in self.values):
            raise StructureError("function values must be finite")


@dataclass(frozen=True)
class DiscreteFunctional:
    """Nonnegative weight vector; unital when the weights sum to 1."""

    weights: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(float(w) for w in self.weights))
        if not self.weights:
            raise StructureError("a functional needs at least one weight")
        if any(w < 0.0 for w in self.weights):
            raise StructureError("functional weights must be nonnegative")

    @property
    def total(self) -> float:
        return math.fsum(self.weights)

    def is_unital(self, tol: float = EPS_EQ) -> bool:
        return abs(self.total - 1.0) <= tol


@dataclass(frozen=True)
class RangeConstraint:
    inner: IntervalR
    outer: IntervalR
    mode: str  # "inside" | "outside"

    def __post_init__(self):
        if self.mode not in ("inside", "outside"):
            raise StructureError(f"unknown range mode {self.mode!r}")
        if not self.outer.contains_interval(self.inner):
            raise StructureError("inner interval must lie within the outer one")


def _weights(L) -> tuple[float, ...]:
    if isinstance(L, DiscreteFunctional):
        return L.weights
    return DiscreteFunctional(tuple(L)).weights


def _values(u) -> tuple[float, ...]:
    if isinstance(u, FunctionOnOmega):
        return u.values
    return FunctionOnOmega(tuple(u)).values


def _sq(values: Sequence[float]) -> tuple[float, ...]:
    return tuple(v * v for v in values)


def apply(L, u) -> float:
    """Weighted sum; for a unital functional the value lies in [min u, max u]."""
    w, v = _weights(L), _values(u)
    if len(w) != len(v):
        raise StructureError(f"length mismatch: {len(w)} weights vs {len(v)} values")
    return math.fsum(wi * vi for wi, vi in zip(w, v))


def apply_fn(L, f: FunctionModel, u) -> float:
    """Weighted sum of f over the values; zero-weight coordinates are skipped."""
    w, v = _weights(L), _values(u)
    if len(w) != len(v):
        raise StructureError(f"length mismatch: {len(w)} weights vs {len(v)} values")
    return math.fsum(wi * eval_fn(f, vi) for wi, vi in zip(w, v) if wi != 0.0)


def check_range(u, rc: RangeConstraint, tol: float = EPS_EQ) -> ValidityReport:
    """Inside mode: every value in the inner interval.  Outside mode: every
    value in the outer interval and none strictly inside the open inner one."""
    v = _values(u)
    cs = CheckSet(tol)
    if rc.mode == "inside":
        worst = max(max(rc.inner.lo - x, x - rc.inner.hi, 0.0) for x in v)
        cs.record("range.inside", worst, worst <= tol)
    else:
        worst_out = max(max(rc.outer.lo - x, x - rc.outer.hi, 0.0) for x in v)
        cs.record("range.in_outer", worst_out, worst_out <= tol)
        depth = max(min(x - rc.inner.lo, rc.inner.hi - x) for x in v)
        cs.record("range.outside_inner", max(depth, 0.0), depth <= tol)
    return cs.report()


def _unital(cs: CheckSet, name: str, w: Sequence[float]) -> bool:
    return cs.equality(name, math.fsum(w) - 1.0)


def _inside(cs: CheckSet, name: str, values, interval: IntervalR, tol: float) -> bool:
    worst = max(max(interval.lo - x, x - interval.hi, 0.0) for x in values)
    return cs.record(name, worst, worst <= tol)


def _outside_open(cs: CheckSet, name: str, values, inner: IntervalR, tol: float) -> bool:
    depth = max(min(x - inner.lo, inner.hi - x) for x in values)
    return cs.record(name, max(depth, 0.0), depth <= tol)


def _convex_gate(cs: CheckSet, f: FunctionModel, interval: IntervalR, tol: float) -> bool:
    return cs.at_least("f.convex", convexity_margin(f, interval, CONVEXITY_GRID))


def _k1_gate(
    cs: CheckSet,
    f: FunctionModel,
    c: float,
    interval: IntervalR,
    A: float | None,
    grid_n: int,
    tol: float,
) -> float | None:
    if A is None:
        A = k1_witness(f, c, interval, grid_n, tol)
    cs.record("witness.K1c", 0.0 if A is None else A, A is not None)
    return A


def _raise_if_unmet(cs: CheckSet) -> None:
    if not cs.ok:
        rep = cs.report()
        raise HypothesesUnmet(rep.violations, rep)


def verify_it2(
    f: FunctionModel, L, g, H, h, *, inner: IntervalR, interval: IntervalR, tol: float = EPS_EQ
) -> ChainReport:
    """Transfer inequality: with L, H unital, g valued in the inner interval,
    h valued outside it, and L(g) = H(h), convex f gives L(f.g) <= H(f.h)."""
    w_l, w_h = _weights(L), _weights(H)
    v_g, v_h = _values(g), _values(h)
    cs = CheckSet(tol)
    _unital(cs, "unital.L", w_l)
    _unital(cs, "unital.H", w_h)
    cs.record("inner_in_interval", 0.0, interval.contains_interval(inner, tol))
    _convex_gate(cs, f, interval, tol)
    _inside(cs, "range.g", v_g, inner, tol)
    _inside(cs, "range.h_outer", v_h, interval, tol)
    _outside_open(cs, "range.h", v_h, inner, tol)
    lg, hh = apply(w_l, v_g), apply(w_h, v_h)
    cs.equality("1.4", lg - hh, scale=max(abs(lg), abs(hh)))
    if not cs.ok:
        return ChainReport(UNMET, hypotheses=cs.report())
    left = apply_fn(w_l, f, v_g)
    right = apply_fn(w_h, f, v_h)
    margin = right - left
    verdict = HOLDS if margin >= -tol else FAILS
    return ChainReport(
        verdict,
        gap_left=left,
        gap_right=right,
        margins=(margin,),
        hypotheses=cs.report(),
        details={"lhs": left, "rhs": right},
    )


def verify_ic1(
    f: FunctionModel,
    L,
    g,
    *,
    inner: IntervalR,
    tol: float = EPS_EQ,
    checks: CheckSet | None = None,
) -> float:
    """Jensen margin L(f.g) - f(L(g)) >= 0 for unital L and convex f."""
    w, v = _weights(L), _values(g)
    cs = checks if checks is not None else CheckSet(tol)
    _unital(cs, "unital.L", w)
    _convex_gate(cs, f, inner, tol)
    _inside(cs, "range.g", v, inner, tol)
    _raise_if_unmet(cs)
    return apply_fn(w, f, v) - eval_fn(f, apply(w, v))


def _ladder_checks(
    cs: CheckSet,
    label: str,
    vs: list[tuple[float, ...]],
    inners: Sequence[IntervalR],
    interval: IntervalR,
    tol: float,
) -> None:
    """Nested-interval ladder: level 1 inside the first inner interval, each
    later level inside the next interval but outside the open previous one."""
    for i in range(len(inners) - 1):
        cs.record(
            f"nesting.{label}[{i + 1}]", 0.0, inners[i + 1].contains_interval(inners[i], tol)
        )
    cs.record(f"nesting.{label}[outer]", 0.0, interval.contains_interval(inners[-1], tol))
    _inside(cs, f"range.{label}1", vs[0], inners[0], tol)
    for k in range(1, len(vs)):
        outer = inners[k] if k < len(vs) - 1 else interval
        _inside(cs, f"range.{label}{k + 1}_outer", vs[k], outer, tol)
        _outside_open(cs, f"range.{label}{k + 1}", vs[k], inners[k - 1], tol)


def verify_ic2(
    f: FunctionModel,
    Ls,
    gs,
    *,
    inners: Sequence[IntervalR],
    interval: IntervalR,
    tol: float = EPS_EQ,
    checks: CheckSet | None = None,
) -> list[float]:
    """Link margins along a nested ladder with matched means: each
    L_{i+1}(f.g_{i+1}) - L_i(f.g_i) >= 0 (tag "1.7" for the mean links)."""
    n = len(Ls)
    if n < 2 or len(gs) != n:
        raise StructureError("need at least two functionals with matching functions")
    if len(inners) != n - 1:
        raise StructureError("need exactly n-1 nested inner intervals")
    ws = [_weights(L) for L in Ls]
    vs = [_values(g) for g in gs]
    cs = checks if checks is not None else CheckSet(tol)
    _convex_gate(cs, f, interval, tol)
    for i, w in enumerate(ws, start=1):
        _unital(cs, f"unital.L{i}", w)
    _ladder_checks(cs, "g", vs, inners, interval, tol)
    means = [apply(w, v) for w, v in zip(ws, vs)]
    for i in range(n - 1):
        cs.equality(
            f"1.7[{i + 1}]",
            means[i] - means[i + 1],
            scale=max(abs(means[i]), abs(means[i + 1])),
        )
    _raise_if_unmet(cs)
    lifted = [apply_fn(w, f, v) for w, v in zip(ws, vs)]
    return [lifted[i + 1] - lifted[i] for i in range(n - 1)]


def verify_ic3(
    f: FunctionModel,
    Ls,
    gs,
    *,
    interval: IntervalR,
    tol: float = EPS_EQ,
    checks: CheckSet | None = None,
) -> tuple[bool, float]:
    """Subunital family: returns (aggregate value in interval per tag "1.9",
    Jensen margin of the aggregate)."""
    ws = [_weights(L) for L in Ls]
    vs = [_values(g) for g in gs]
    if len(ws) != len(vs) or not ws:
        raise StructureError("need matching nonempty functional and function families")
    cs = checks if checks is not None else CheckSet(tol)
    _convex_gate(cs, f, interval, tol)
    cs.equality("totals", math.fsum(math.fsum(w) for w in ws) - 1.0)
    for i, v in enumerate(vs, start=1):
        _inside(cs, f"range.g{i}", v, interval, tol)
    _raise_if_unmet(cs)
    value = math.fsum(apply(w, v) for w, v in zip(ws, vs))
    inclusion = interval.contains(value, tol)
    margin = math.fsum(apply_fn(w, f, v) for w, v in zip(ws, vs)) - eval_fn(f, value)
    return inclusion, margin


def verify_it3(
    f: FunctionModel,
    Ls,
    gs,
    Hs,
    hs,
    *,
    inner: IntervalR,
    interval: IntervalR,
    tol: float = EPS_EQ,
    checks: CheckSet | None = None,
) -> float:
    """Family transfer margin: sum H_j(f.h_j) - sum L_i(f.g_i) >= 0 under the
    matched family means (tag "1.11")."""
    ws_l = [_weights(L) for L in Ls]
    vs_g = [_values(g) for g in gs]
    ws_h = [_weights(H) for H in Hs]
    vs_h = [_values(h) for h in hs]
    if len(ws_l) != len(vs_g) or len(ws_h) != len(vs_h) or not ws_l or not ws_h:
        raise StructureError("family sizes must match and be nonempty")
    cs = checks if checks is not None else CheckSet(tol)
    _convex_gate(cs, f, interval, tol)
    cs.record("inner_in_interval", 0.0, interval.contains_interval(inner, tol))
    cs.equality("totals.L", math.fsum(math.fsum(w) for w in ws_l) - 1.0)
    cs.equality("totals.H", math.fsum(math.fsum(w) for w in ws_h) - 1.0)
    for i, v in enumerate(vs_g, start=1):
        _inside(cs, f"range.g{i}", v, inner, tol)
    for j, v in enumerate(vs_h, start=1):
        _inside(cs, f"range.h{j}_outer", v, interval, tol)
        _outside_open(cs, f"range.h{j}", v, inner, tol)
    sum_lg = math.fsum(apply(w, v) for w, v in zip(ws_l, vs_g))
    sum_hh = math.fsum(apply(w, v) for w, v in zip(ws_h, vs_h))
    cs.equality("1.11", sum_lg - sum_hh, scale=max(abs(sum_lg), abs(sum_hh)))
    _raise_if_unmet(cs)
    left = math.fsum(apply_fn(w, f, v) for w, v in zip(ws_l, vs_g))
    right = math.fsum(apply_fn(w, f, v) for w, v in zip(ws_h, vs_h))
    return right - left


def _pair_range_checks(
    cs: CheckSet,
    tag: str,
    v_g,
    v_h,
    inner: IntervalR,
    outer: IntervalR,
    tol: float,
) -> None:
    _inside(cs, f"range.g{tag}", v_g, inner, tol)
    _inside(cs, f"range.h{tag}_outer", v_h, outer, tol)
    _outside_open(cs, f"range.h{tag}", v_h, inner, tol)


def verify_mt4(
    f: FunctionModel,
    L,
    H,
    g1,
    h1,
    g2,
    h2,
    *,
    c: float,
    interval: IntervalR,
    inner: IntervalR,
    inner2: IntervalR | None = None,
    mode: str = "region_restricted",
    A: float | None = None,
    grid_n: int = WITNESS_GRID,
    tol: float = EPS_EQ,
) -> ChainReport:
    """Split-point transfer comparison for f 3-convex at c.

    Verdict is on diff1 <= diff2 where diff_i = H(f.h_i) - L(f.g_i) (tag
    "2.12" covers the mean and second-moment constraints).  The refinement
    values diff1 <= (A/2) M1 = (A/2) M2 <= diff2, with M_i the second-moment
    differences, are reported in the chain and ``details`` but only gate the
    verdict through diff2 - diff1.
    """
    if mode not in ("literal", "region_restricted"):
        raise StructureError(f"unknown mode {mode!r}")
    if not interval.contains(c):
        raise StructureError("split point must lie in the interval")
    w_l, w_h = _weights(L), _weights(H)
    v_g1, v_h1, v_g2, v_h2 = _values(g1), _values(h1), _values(g2), _values(h2)
    cs = CheckSet(tol)
    _unital(cs, "unital.L", w_l)
    _unital(cs, "unital.H", w_h)
    if mode == "literal":
        cs.record("inner_in_interval", 0.0, interval.contains_interval(inner, tol))
        inner1_eff, outer1 = inner, interval
        inner2_eff, outer2 = inner, interval
    else:
        if inner2 is None:
            raise StructureError("region_restricted mode needs a second inner interval")
        outer1 = IntervalR(interval.lo, c)
        outer2 = IntervalR(c, interval.hi)
        cs.record("region.inner1", 0.0, outer1.contains_interval(inner, tol))
        cs.record("region.inner2", 0.0, outer2.contains_interval(inner2, tol))
        inner1_eff, inner2_eff = inner, inner2
    _pair_range_checks(cs, "1", v_g1, v_h1, inner1_eff, outer1, tol)
    _pair_range_checks(cs, "2", v_g2, v_h2, inner2_eff, outer2, tol)
    m_g1, m_h1 = apply(w_l, v_g1), apply(w_h, v_h1)
    m_g2, m_h2 = apply(w_l, v_g2), apply(w_h, v_h2)
    cs.equality("2.12.mean1", m_g1 - m_h1, scale=max(abs(m_g1), abs(m_h1)))
    cs.equality("2.12.mean2", m_g2 - m_h2, scale=max(abs(m_g2), abs(m_h2)))
    moment1 = apply(w_h, _sq(v_h1)) - apply(w_l, _sq(v_g1))
    moment2 = apply(w_h, _sq(v_h2)) - apply(w_l, _sq(v_g2))
    cs.equality("2.12.moment", moment1 - moment2, scale=max(abs(moment1), abs(moment2)))
    A = _k1_gate(cs, f, c, interval, A, grid_n, tol)
    if not cs.ok:
        return ChainReport(UNMET, hypotheses=cs.report(), details={"mode": mode, "c": c})
    diff1 = apply_fn(w_h, f, v_h1) - apply_fn(w_l, f, v_g1)
    diff2 = apply_fn(w_h, f, v_h2) - apply_fn(w_l, f, v_g2)
    mid1, mid2 = 0.5 * A * moment1, 0.5 * A * moment2
    margin = diff2 - diff1
    verdict = HOLDS if margin >= -tol else FAILS
    details = {
        "mode": mode,
        "c": c,
        "A": A,
        "refine_left": mid1 - diff1,
        "refine_mid": mid2 - mid1,
        "refine_right": diff2 - mid2,
    }
    return ChainReport(
        verdict,
        gap_left=diff1,
        gap_right=diff2,
        spread_left=moment1,
        spread_right=moment2,
        mid_left=mid1,
        mid_right=mid2,
        margins=(margin,),
        hypotheses=cs.report(),
        details=details,
    )


def verify_mc1(
    f: FunctionModel,
    L,
    g1,
    g2,
    *,
    c: float,
    inner: IntervalR,
    interval: IntervalR | None = None,
    mode: str = "region_restricted",
    grid_n: int = WITNESS_GRID,
    tol: float = EPS_EQ,
    checks: CheckSet | None = None,
) -> float:
    """Jensen-gap comparison under matched variances (tag "2.17"): returns
    [L(f.g2) - f(L(g2))] - [L(f.g1) - f(L(g1))].

    In region_restricted mode g1 is confined to values at or below c and g2
    at or above c; literal mode only requires both inside the inner interval.
    """
    if mode not in ("literal", "region_restricted"):
        raise StructureError(f"unknown mode {mode!r}")
    w = _weights(L)
    v1, v2 = _values(g1), _values(g2)
    cls_interval = interval if interval is not None else inner
    cs = checks if checks is not None else CheckSet(tol)
    _unital(cs, "unital.L", w)
    _inside(cs, "range.g1", v1, inner, tol)
    _inside(cs, "range.g2", v2, inner, tol)
    if mode == "region_restricted":
        cs.at_least("region.g1_left_of_c", c - max(v1), scale=abs(c))
        cs.at_least("region.g2_right_of_c", min(v2) - c, scale=abs(c))
    m1, m2 = apply(w, v1), apply(w, v2)
    var1 = apply(w, _sq(v1)) - m1 * m1
    var2 = apply(w, _sq(v2)) - m2 * m2
    cs.equality("2.17", var1 - var2, scale=max(abs(var1), abs(var2)))
    _k1_gate(cs, f, c, cls_interval, None, grid_n, tol)
    _raise_if_unmet(cs)
    gap1 = apply_fn(w, f, v1) - eval_fn(f, m1)
    gap2 = apply_fn(w, f, v2) - eval_fn(f, m2)
    return gap2 - gap1


def verify_mc2(
    f: FunctionModel,
    Ls,
    gs,
    hs,
    *,
    c: float,
    interval: IntervalR,
    g_inners: Sequence[IntervalR],
    h_inners: Sequence[IntervalR] | None = None,
    mode: str = "region_restricted",
    grid_n: int = WITNESS_GRID,
    tol: float = EPS_EQ,
    checks: CheckSet | None = None,
) -> list[float]:
    """Per-link comparison of two nested ladders with matched means (tag
    "2.19") and matched second-moment increments (tag "2.20"): each link
    margin [Lf(h_next) - Lf(h)] - [Lf(g_next) - Lf(g)] >= 0.

    In region_restricted mode the g-ladder lives in the half-interval left
    of c and the h-ladder right of c, each with its own nesting; literal
    mode uses one shared ladder of inner intervals for both families.
    """
    if mode not in ("literal", "region_restricted"):
        raise StructureError(f"unknown mode {mode!r}")
    n = len(Ls)
    if n < 2 or len(gs) != n or len(hs) != n:
        raise StructureError("need n >= 2 with matching family sizes")
    if h_inners is None:
        h_inners = g_inners
    if len(g_inners) != n - 1 or len(h_inners) != n - 1:
        raise StructureError("each ladder needs exactly n-1 inner intervals")
    ws = [_weights(L) for L in Ls]
    vgs = [_values(g) for g in gs]
    vhs = [_values(h) for h in hs]
    cs = checks if checks is not None else CheckSet(tol)
    for i, w in enumerate(ws, start=1):
        _unital(cs, f"unital.L{i}", w)
    if mode == "region_restricted":
        g_outer = IntervalR(interval.lo, c)
        h_outer = IntervalR(c, interval.hi)
    else:
        g_outer = h_outer = interval
    _ladder_checks(cs, "g", vgs, g_inners, g_outer, tol)
    _ladder_checks(cs, "h", vhs, h_inners, h_outer, tol)
    g_means = [apply(w, v) for w, v in zip(ws, vgs)]
    h_means = [apply(w, v) for w, v in zip(ws, vhs)]
    g_sqs = [apply(w, _sq(v)) for w, v in zip(ws, vgs)]
    h_sqs = [apply(w, _sq(v)) for w, v in zip(ws, vhs)]
    for i in range(n - 1):
        cs.equality(
            f"2.19.g[{i + 1}]",
            g_means[i] - g_means[i + 1],
            scale=max(abs(g_means[i]), abs(g_means[i + 1])),
        )
        cs.equality(
            f"2.19.h[{i + 1}]",
            h_means[i] - h_means[i + 1],
            scale=max(abs(h_means[i]), abs(h_means[i + 1])),
        )
        dg = g_sqs[i + 1] - g_sqs[i]
        dh = h_sqs[i + 1] - h_sqs[i]
        cs.equality(f"2.20[{i + 1}]", dg - dh, scale=max(abs(dg), abs(dh)))
    _k1_gate(cs, f, c, interval, None, grid_n, tol)
    _raise_if_unmet(cs)
    g_lift = [apply_fn(w, f, v) for w, v in zip(ws, vgs)]
    h_lift = [apply_fn(w, f, v) for w, v in zip(ws, vhs)]
    return [
        (h_lift[i + 1] - h_lift[i]) - (g_lift[i + 1] - g_lift[i]) for i in range(n - 1)
    ]


def verify_mc3(
    f: FunctionModel,
    Ls,
    gs,
    hs,
    *,
    c: float,
    interval: IntervalR,
    mode: str = "region_restricted",
    grid_n: int = WITNESS_GRID,
    tol: float = EPS_EQ,
    checks: CheckSet | None = None,
) -> tuple[bool, float]:
    """Subunital-family comparison under matched aggregate variances (tag
    "2.22").  Returns (both aggregate means inside the interval per tag
    "2.23", margin of the aggregate Jensen-gap comparison).

    The stated inclusion lists one aggregate twice; it is implemented as the
    pair (sum L_i(g_i), sum L_i(h_i)), reading the duplication as a typo.
    """
    if mode not in ("literal", "region_restricted"):
        raise StructureError(f"unknown mode {mode!r}")
    ws = [_weights(L) for L in Ls]
    vgs = [_values(g) for g in gs]
    vhs = [_values(h) for h in hs]
    if not ws or len(ws) != len(vgs) or len(ws) != len(vhs):
        raise StructureError("family sizes must match and be nonempty")
    cs = checks if checks is not None else CheckSet(tol)
    cs.equality("totals", math.fsum(math.fsum(w) for w in ws) - 1.0)
    for i, (vg, vh) in enumerate(zip(vgs, vhs), start=1):
        _inside(cs, f"range.g{i}", vg, interval, tol)
        _inside(cs, f"range.h{i}", vh, interval, tol)
        if mode == "region_restricted":
            cs.at_least(f"region.g{i}_left_of_c", c - max(vg), scale=abs(c))
            cs.at_least(f"region.h{i}_right_of_c", min(vh) - c, scale=abs(c))
    g_mean = math.fsum(apply(w, v) for w, v in zip(ws, vgs))
    h_mean = math.fsum(apply(w, v) for w, v in zip(ws, vhs))
    g_var = math.fsum(apply(w, _sq(v)) for w, v in zip(ws, vgs)) - g_mean * g_mean
    h_var = math.fsum(apply(w, _sq(v)) for w, v in zip(ws, vhs)) - h_mean * h_mean
    cs.equality("2.22", g_var - h_var, scale=max(abs(g_var), abs(h_var)))
    _k1_gate(cs, f, c, interval, None, grid_n, tol)
    _raise_if_unmet(cs)
    inclusion = interval.contains(g_mean, tol) and interval.contains(h_mean, tol)
    g_gap = math.fsum(apply_fn(w, f, v) for w, v in zip(ws, vgs)) - eval_fn(f, g_mean)
    h_gap = math.fsum(apply_fn(w, f, v) for w, v in zip(ws, vhs)) - eval_fn(f, h_mean)
    return inclusion, h_gap - g_gap


def verify_mt5(
    f: FunctionModel,
    Ls,
    gs,
    Hs,
    hs,
    Ls_star,
    gs_star,
    Hs_star,
    hs_star,
    *,
    c: float,
    interval: IntervalR,
    inner: IntervalR,
    inner2: IntervalR | None = None,
    mode: str = "region_restricted",
    A: float | None = None,
    grid_n: int = WITNESS_GRID,
    tol: float = EPS_EQ,
) -> ChainReport:
    """Family version of the split-point transfer comparison (tags "2.25",
    "2.26").  The unstarred families play the left role and the starred
    families the right role; with singleton families this coincides with
    verify_mt4 on the same data.
    """
    if mode not in ("literal", "region_restricted"):
        raise StructureError(f"unknown mode {mode!r}")
    if not interval.contains(c):
        raise StructureError("split point must lie in the interval")
    fams = {
        "L": [_weights(x) for x in Ls],
        "H": [_weights(x) for x in Hs],
        "L*": [_weights(x) for x in Ls_star],
        "H*": [_weights(x) for x in Hs_star],
    }
    vals = {
        "g": [_values(x) for x in gs],
        "h": [_values(x) for x in hs],
        "g*": [_values(x) for x in gs_star],
        "h*": [_values(x) for x in hs_star],
    }
    if len(fams["L"]) != len(vals["g"]) or len(fams["H"]) != len(vals["h"]):
        raise StructureError("family sizes must match")
    if len(fams["L*"]) != len(vals["g*"]) or len(fams["H*"]) != len(vals["h*"]):
        raise StructureError("family sizes must match")
    cs = CheckSet(tol)
    for name, fam in fams.items():
        cs.equality(f"totals.{name}", math.fsum(math.fsum(w) for w in fam) - 1.0)
    if mode == "literal":
        cs.record("inner_in_interval", 0.0, interval.contains_interval(inner, tol))
        inner1_eff = inner2_eff = inner
        outer1 = outer2 = interval
    else:
        if inner2 is None:
            raise StructureError("region_restricted mode needs a second inner interval")
        outer1 = IntervalR(interval.lo, c)
        outer2 = IntervalR(c, interval.hi)
        cs.record("region.inner1", 0.0, outer1.contains_interval(inner, tol))
        cs.record("region.inner2", 0.0, outer2.contains_interval(inner2, tol))
        inner1_eff, inner2_eff = inner, inner2
    for i, v in enumerate(vals["g"], start=1):
        _inside(cs, f"range.g{i}", v, inner1_eff, tol)
    for j, v in enumerate(vals["h"], start=1):
        _inside(cs, f"range.h{j}_outer", v, outer1, tol)
        _outside_open(cs, f"range.h{j}", v, inner1_eff, tol)
    for i, v in enumerate(vals["g*"], start=1):
        _inside(cs, f"range.g*{i}", v, inner2_eff, tol)
    for j, v in enumerate(vals["h*"], start=1):
        _inside(cs, f"range.h*{j}_outer", v, outer2, tol)
        _outside_open(cs, f"range.h*{j}", v, inner2_eff, tol)

    def fam_sum(fam_key: str, val_key: str, values=None) -> float:
        fam, vv = fams[fam_key], vals[val_key]
        if values is not None:
            vv = values
        return math.fsum(apply(w, v) for w, v in zip(fam, vv))

    sum_lg = fam_sum("L", "g")
    sum_hh = fam_sum("H", "h")
    sum_lg2 = fam_sum("L*", "g*")
    sum_hh2 = fam_sum("H*", "h*")
    cs.equality("2.25.1", sum_hh - sum_lg, scale=max(abs(sum_hh), abs(sum_lg)))
    cs.equality("2.25.2", sum_hh2 - sum_lg2, scale=max(abs(sum_hh2), abs(sum_lg2)))
    moment1 = fam_sum("H", "h", [_sq(v) for v in vals["h"]]) - fam_sum(
        "L", "g", [_sq(v) for v in vals["g"]]
    )
    moment2 = fam_sum("H*", "h*", [_sq(v) for v in vals["h*"]]) - fam_sum(
        "L*", "g*", [_sq(v) for v in vals["g*"]]
    )
    cs.equality("2.26", moment1 - moment2, scale=max(abs(moment1), abs(moment2)))
    A = _k1_gate(cs, f, c, interval, A, grid_n, tol)
    if not cs.ok:
        return ChainReport(UNMET, hypotheses=cs.report(), details={"mode": mode, "c": c})

    def fam_fsum(fam_key: str, val_key: str) -> float:
        return math.fsum(apply_fn(w, f, v) for w, v in zip(fams[fam_key], vals[val_key]))

    diff1 = fam_fsum("H", "h") - fam_fsum("L", "g")
    diff2 = fam_fsum("H*", "h*") - fam_fsum("L*", "g*")
    mid1, mid2 = 0.5 * A * moment1, 0.5 * A * moment2
    margin = diff2 - diff1
    verdict = HOLDS if margin >= -tol else FAILS
    return ChainReport(
        verdict,
        gap_left=diff1,
        gap_right=diff2,
        spread_left=moment1,
        spread_right=moment2,
        mid_left=mid1,
        mid_right=mid2,
        margins=(margin,),
        hypotheses=cs.report(),
        details={
            "mode": mode,
            "c": c,
            "A": A,
            "refine_left": mid1 - diff1,
            "refine_mid": mid2 - mid1,
            "refine_right": diff2 - mid2,
        },
    )
