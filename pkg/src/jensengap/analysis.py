"""Divided differences and pointwise 3-convexity classification.

The second-order bracket used throughout is twice the classical second
divided difference,

    dd2(x1, x2, x3) = 2 * ([x2,x3]f - [x1,x2]f) / (x3 - x1),

so that on shrinking triples it converges to f''.  A function is 3-convex
at a split point c exactly when some constant A satisfies

    sup { dd2 over triples left of c }  <=  A  <=  inf { dd2 over triples right of c },

in which case F(x) = f(x) - (A/2) x^2 is concave left of c and convex right
of c at grid resolution.  3-concavity at c is the same condition for -f.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .domain import EPS_EQ, IntervalR, StructureError
from .funclib import DomainError, FunctionModel, eval_fn, negate

#: grid points per side for classification scans
DEFAULT_GRID = 1000
#: relative width below which a side imposes no constraint
_DEGENERATE = 1e-12


def _require_distinct(xs: tuple[float, ...]) -> None:
    for i, a in enumerate(xs):
        for b in xs[i + 1 :]:
            if a == b:
                raise StructureError(f"coincident nodes at {a!r}")


def dd2(f: FunctionModel, x1: float, x2: float, x3: float) -> float:
    """Doubled second divided difference; symmetric in the three nodes."""
    _require_distinct((x1, x2, x3))
    f1, f2, f3 = eval_fn(f, x1), eval_fn(f, x2), eval_fn(f, x3)
    return 2.0 * ((f3 - f2) / (x3 - x2) - (f2 - f1) / (x2 - x1)) / (x3 - x1)


def dd3(f: FunctionModel, x1: float, x2: float, x3: float, x4: float) -> float:
    """Classical third divided difference via the recursive definition."""
    _require_distinct((x1, x2, x3, x4))
    xs = (x1, x2, x3, x4)
    vals = [eval_fn(f, x) for x in xs]
    for order in range(1, 4):
        vals = [
            (vals[i + 1] - vals[i]) / (xs[i + order] - xs[i])
            for i in range(len(vals) - 1)
        ]
    return vals[0]


def _grid_values(f: FunctionModel, lo: float, hi: float, n: int) -> tuple[np.ndarray, np.ndarray]:
    xs = np.linspace(lo, hi, n)
    ys = np.array([eval_fn(f, float(x)) for x in xs])
    return xs, ys


def bracket_windows(f: FunctionModel, lo: float, hi: float, n: int) -> np.ndarray:
    """dd2 over all consecutive grid triples of an n-point uniform grid."""
    if n < 3:
        raise StructureError("grid needs at least 3 points per side")
    xs, ys = _grid_values(f, lo, hi, n)
    slopes = np.diff(ys) / np.diff(xs)
    return 2.0 * (slopes[1:] - slopes[:-1]) / (xs[2:] - xs[:-2])


def third_windows(f: FunctionModel, lo: float, hi: float, n: int) -> np.ndarray:
    """Classical third divided differences over consecutive grid quadruples."""
    if n < 4:
        raise StructureError("grid needs at least 4 points")
    xs, ys = _grid_values(f, lo, hi, n)
    d1 = np.diff(ys) / np.diff(xs)
    d2c = (d1[1:] - d1[:-1]) / (xs[2:] - xs[:-2])
    return (d2c[1:] - d2c[:-1]) / (xs[3:] - xs[:-3])


def is_3convex(f: FunctionModel, interval: IntervalR, grid_n: int = 257, tol: float = EPS_EQ) -> bool:
    """Grid evidence that third divided differences are nonnegative."""
    return float(third_windows(f, interval.lo, interval.hi, grid_n).min()) >= -tol


def is_3concave(f: FunctionModel, interval: IntervalR, grid_n: int = 257, tol: float = EPS_EQ) -> bool:
    return float(third_windows(f, interval.lo, interval.hi, grid_n).max()) <= tol


@dataclass(frozen=True)
class AInterval:
    """Feasible range for the curvature constant; endpoints may be infinite."""

    lo: float
    hi: float
    feasible: bool

    def contains(self, x: float, tol: float = EPS_EQ) -> bool:
        return self.lo - tol <= x <= self.hi + tol

    def midpoint(self) -> float:
        """Midpoint clamped to finite values."""
        lo_fin = math.isfinite(self.lo)
        hi_fin = math.isfinite(self.hi)
        if lo_fin and hi_fin:
            return 0.5 * (self.lo + self.hi)
        if lo_fin:
            return self.lo
        if hi_fin:
            return self.hi
        return 0.0


def curvature_sandwich(
    f: FunctionModel,
    interval: IntervalR,
    left_hi: float,
    right_lo: float,
    grid_n: int = DEFAULT_GRID,
    tol: float = EPS_EQ,
) -> AInterval:
    """Bracket bounds over [interval.lo, left_hi] and [right_lo, interval.hi].

    lo is the supremum of dd2 over consecutive triples on the left piece, hi
    the infimum on the right piece.  A degenerate (zero-width) piece imposes
    no constraint and contributes an infinite bound.
    """
    lo = -math.inf
    hi = math.inf
    if left_hi - interval.lo > _DEGENERATE * max(1.0, abs(left_hi)):
        lo = float(bracket_windows(f, interval.lo, left_hi, grid_n).max())
    if interval.hi - right_lo > _DEGENERATE * max(1.0, abs(right_lo)):
        hi = float(bracket_windows(f, right_lo, interval.hi, grid_n).min())
    return AInterval(lo, hi, lo <= hi + tol)


def feasible_A_interval(
    f: FunctionModel,
    c: float,
    interval: IntervalR,
    grid_n: int = DEFAULT_GRID,
    tol: float = EPS_EQ,
) -> AInterval:
    """Feasible constants at an interior split point c, at grid resolution."""
    if not (interval.lo < c < interval.hi):
        raise StructureError("split point must be interior to the interval")
    return curvature_sandwich(f, interval, c, c, grid_n, tol)


@dataclass(frozen=True)
class ConvexityClass:
    """Classification at a point: kind is "K1c", "K2c", "both" or "neither"."""

    kind: str
    witness_A: float | None
    point: float
    k1_interval: AInterval
    k2_interval: AInterval


def classify_at_point(
    f: FunctionModel,
    c: float,
    interval: IntervalR,
    grid_n: int = DEFAULT_GRID,
    tol: float = EPS_EQ,
) -> ConvexityClass:
    """Classify f at c; the witness constant is the feasible-interval midpoint."""
    k1 = feasible_A_interval(f, c, interval, grid_n, tol)
    k2_neg = feasible_A_interval(negate(f), c, interval, grid_n, tol)
    k2 = AInterval(-k2_neg.hi, -k2_neg.lo, k2_neg.feasible)
    if k1.feasible and k2.feasible:
        kind = "both"
        inter = AInterval(max(k1.lo, k2.lo), min(k1.hi, k2.hi), True)
        witness = inter.midpoint() if inter.lo <= inter.hi + tol else k1.midpoint()
    elif k1.feasible:
        kind, witness = "K1c", k1.midpoint()
    elif k2.feasible:
        kind, witness = "K2c", k2.midpoint()
    else:
        kind, witness = "neither", None
    return ConvexityClass(kind, witness, c, k1, k2)


def convexity_margin(f: FunctionModel, interval: IntervalR, grid_n: int = 257) -> float:
    """Minimum dd2 over a grid; >= 0 (up to tolerance) exactly for convex f.

    A degenerate interval imposes no constraint and yields 0.
    """
    if interval.width <= _DEGENERATE * max(1.0, abs(interval.lo)):
        return 0.0
    return float(bracket_windows(f, interval.lo, interval.hi, grid_n).min())


def k1_witness(
    f: FunctionModel,
    c: float,
    interval: IntervalR,
    grid_n: int = DEFAULT_GRID,
    tol: float = EPS_EQ,
) -> float | None:
    """Constant making f 3-convex at c: declared metadata when it matches,
    otherwise the feasible-interval midpoint; None when infeasible."""
    kc = f.known_class
    if kc is not None and kc.kind in ("K1c", "both") and abs(kc.c - c) <= tol:
        return kc.A
    try:
        cls = classify_at_point(f, c, interval, grid_n, tol)
    except (StructureError, DomainError):
        return None
    if cls.k1_interval.feasible:
        return cls.k1_interval.midpoint()
    return None
