"""Function models: evaluation, one-sided curvature, and a small catalog.

Catalog entries carry analytic one-sided second derivatives and, where the
structure is known in closed form, the point c and constant A for which
f(x) - (A/2) x^2 switches concavity at c ("K1c": 3-convex at c, "K2c":
3-concave at c, "both" for quadratics).
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Callable

from .domain import IntervalR, StructureError


class DomainError(ValueError):
    """Evaluation outside a model's domain."""


#: half-width of the default domain for polynomial catalog entries
WIDE = 1e6
#: relative step for one-sided second differences
FD_STEP = 1e-5
#: relative slack when testing domain membership
DOMAIN_SLACK = 1e-12


@dataclass(frozen=True)
class KnownClass:
    """Declared pointwise structure: kind is "K1c", "K2c" or "both"."""

    c: float
    A: float
    kind: str


@dataclass(frozen=True)
class FunctionModel:
    name: str
    domain: IntervalR
    fn: Callable[[float], float]
    d2_minus: Callable[[float], float] | None = None
    d2_plus: Callable[[float], float] | None = None
    known_class: KnownClass | None = None


def eval_fn(f: FunctionModel, x: float) -> float:
    slack = DOMAIN_SLACK * max(1.0, abs(x))
    if not f.domain.contains(x, slack):
        raise DomainError(
            f"{f.name}: x={x!r} outside domain [{f.domain.lo}, {f.domain.hi}]"
        )
    value = float(f.fn(x))
    if not math.isfinite(value):
        raise DomainError(f"{f.name}: non-finite value at x={x!r}")
    return value


def d2_one_sided(f: FunctionModel, x: float, side: str, h: float | None = None) -> float:
    """One-sided second derivative at x.

    Uses the analytic mapping when the model provides one; otherwise a
    one-sided second difference with O(h) accuracy on C^3 pieces:
    (f(x) - 2 f(x -+ h) + f(x -+ 2h)) / h^2 for side "minus"/"plus".
    """
    if side not in ("minus", "plus"):
        raise ValueError(f"side must be 'minus' or 'plus', got {side!r}")
    analytic = f.d2_minus if side == "minus" else f.d2_plus
    if analytic is not None:
        return float(analytic(x))
    if h is None:
        h = FD_STEP * max(1.0, abs(x))
    if h <= 0.0:
        raise ValueError("step h must be positive")
    sgn = -1.0 if side == "minus" else 1.0
    far = x + sgn * 2.0 * h
    if not f.domain.contains(far, DOMAIN_SLACK * max(1.0, abs(far))):
        raise DomainError(f"{f.name}: no room for the {side}-side stencil at x={x!r}")
    return (eval_fn(f, x) - 2.0 * eval_fn(f, x + sgn * h) + eval_fn(f, far)) / (h * h)


def _signed_square_d2_minus(x: float) -> float:
    return -2.0 if x <= 0.0 else 2.0


def _signed_square_d2_plus(x: float) -> float:
    return 2.0 if x >= 0.0 else -2.0


def catalog(
    name: str,
    param: float | str | None = None,
    point: float = 0.0,
    table: "TabulatedFunction | None" = None,
) -> FunctionModel:
    """Build a catalog model.

    Names: quadratic (needs a curvature parameter q, f = q x^2 / 2), cubic,
    signed_square (x|x|), exp, tabulated-spline (needs a table or a file
    path).  ``point`` anchors the declared class metadata where it depends
    on the anchor (cubic, exp, quadratic).
    """
    wide = IntervalR(-WIDE, WIDE)
    if name == "quadratic":
        if param is None:
            raise StructureError("quadratic needs a parameter, e.g. quadratic:2")
        q = float(param)
        return FunctionModel(
            name=f"quadratic({q:g})",
            domain=wide,
            fn=lambda x, q=q: 0.5 * q * x * x,
            d2_minus=lambda x, q=q: q,
            d2_plus=lambda x, q=q: q,
            known_class=KnownClass(point, q, "both"),
        )
    if name == "cubic":
        return FunctionModel(
            name="cubic",
            domain=wide,
            fn=lambda x: x * x * x,
            d2_minus=lambda x: 6.0 * x,
            d2_plus=lambda x: 6.0 * x,
            known_class=KnownClass(point, 6.0 * point, "K1c"),
        )
    if name == "signed_square":
        # f'' = 2 sign(x); at 0 the one-sided values differ.  Any constant in
        # [-2, 2] works at c = 0; the canonical choice is 0.
        return FunctionModel(
            name="signed_square",
            domain=wide,
            fn=lambda x: x * abs(x),
            d2_minus=_signed_square_d2_minus,
            d2_plus=_signed_square_d2_plus,
            known_class=KnownClass(0.0, 0.0, "K1c"),
        )
    if name == "exp":
        return FunctionModel(
            name="exp",
            domain=IntervalR(-10.0, 10.0),
            fn=math.exp,
            d2_minus=math.exp,
            d2_plus=math.exp,
            known_class=KnownClass(point, math.exp(point), "K1c"),
        )
    if name == "tabulated-spline":
        if table is None:
            if param is None:
                raise StructureError("tabulated-spline needs a table or a file path")
            table = load_table(param)
        return tabulated_model(table)
    raise StructureError(f"unknown catalog function {name!r}")


def parse_fn_spec(spec: str, point: float = 0.0) -> FunctionModel:
    """Parse "name" or "name:param" (e.g. "quadratic:2", "tabulated-spline:f.txt")."""
    name, _, arg = spec.partition(":")
    name = name.strip()
    arg = arg.strip()
    if name == "quadratic":
        if not arg:
            raise StructureError("quadratic needs a parameter, e.g. quadratic:2")
        return catalog(name, float(arg), point)
    if name == "tabulated-spline":
        if not arg:
            raise StructureError("tabulated-spline needs a file path")
        return catalog(name, arg, point)
    if arg:
        raise StructureError(f"catalog function {name!r} takes no parameter")
    return catalog(name, None, point)


def negate(f: FunctionModel) -> FunctionModel:
    """Pointwise negation; swaps the declared K1c/K2c kinds and flips A."""
    kc = None
    if f.known_class is not None:
        kind = {"K1c": "K2c", "K2c": "K1c", "both": "both"}[f.known_class.kind]
        kc = KnownClass(f.known_class.c, -f.known_class.A, kind)
    return FunctionModel(
        name=f"neg({f.name})",
        domain=f.domain,
        fn=lambda x, g=f.fn: -g(x),
        d2_minus=None if f.d2_minus is None else (lambda x, g=f.d2_minus: -g(x)),
        d2_plus=None if f.d2_plus is None else (lambda x, g=f.d2_plus: -g(x)),
        known_class=kc,
    )


@dataclass(frozen=True)
class TabulatedFunction:
    """Sampled function on strictly increasing nodes."""

    nodes: tuple[float, ...]
    values: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "nodes", tuple(float(x) for x in self.nodes))
        object.__setattr__(self, "values", tuple(float(y) for y in self.values))
        if len(self.nodes) != len(self.values):
            raise StructureError("nodes and values must have equal length")
        if len(self.nodes) < 2:
            raise StructureError("a table needs at least 2 nodes")
        for a, b in zip(self.nodes, self.nodes[1:]):
            if not a < b:
                raise StructureError("table nodes must be strictly increasing")


def load_table(path: str | Path) -> TabulatedFunction:
    """Read a two-column (node, value) text file; '#' starts a comment."""
    nodes: list[float] = []
    values: list[float] = []
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise StructureError(f"{path}:{lineno}: expected two columns, got {raw!r}")
        try:
            nodes.append(float(parts[0]))
            values.append(float(parts[1]))
        except ValueError as exc:
            raise StructureError(f"{path}:{lineno}: {exc}") from exc
    return TabulatedFunction(tuple(nodes), tuple(values))


def _interp_quadratic(tab: TabulatedFunction, x: float) -> float:
    nodes, vals = tab.nodes, tab.values
    n = len(nodes)
    if n == 2:
        t = (x - nodes[0]) / (nodes[1] - nodes[0])
        return vals[0] + t * (vals[1] - vals[0])
    i = bisect.bisect_right(nodes, x) - 1
    i = min(max(i, 0), n - 2)
    # pick the consecutive triple of nearest nodes around the bracketing pair
    if i == 0:
        j = 0
    elif i >= n - 2:
        j = n - 3
    else:
        j = i - 1 if x - nodes[i - 1] <= nodes[i + 2] - x else i
    x0, x1, x2 = nodes[j : j + 3]
    y0, y1, y2 = vals[j : j + 3]
    d01 = (y1 - y0) / (x1 - x0)
    d12 = (y2 - y1) / (x2 - x1)
    d012 = (d12 - d01) / (x2 - x0)
    return y0 + d01 * (x - x0) + d012 * (x - x0) * (x - x1)


def tabulated_model(tab: TabulatedFunction, name: str = "tabulated-spline") -> FunctionModel:
    """Model evaluating by degree-2 interpolation on the three nearest nodes."""
    return FunctionModel(
        name=name,
        domain=IntervalR(tab.nodes[0], tab.nodes[-1]),
        fn=lambda x, tab=tab: _interp_quadratic(tab, x),
    )
