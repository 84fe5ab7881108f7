"""Scenario and report documents: versioned schema, parsing, and dispatch.

A scenario file is a single JSON object:

    {"schema_version": 1, "theorem_id": "mt1", "mode": "proper",
     "function": {"name": "signed_square"}, "payload": {...}, "seed": 7}

The payload shape depends on the theorem id (see the parsers below).  A
report is a JSON object with verdict, headline margin, chain values, the
named hypothesis residuals, and provenance.  Keys are emitted sorted, so
identical inputs produce byte-identical documents.
"""

from __future__ import annotations

import json
import math
from typing import Any, Sequence

from .affine import Mt1Scenario, verify_mt1, verify_mt2, verify_mt3
from .domain import (
    EPS_EQ,
    AffineConfig,
    CheckSet,
    IntervalR,
    StructureError,
    ValidityReport,
    WeightedGroup,
)
from .funclib import FunctionModel, catalog
from .functional import (
    verify_ic1,
    verify_ic2,
    verify_ic3,
    verify_it2,
    verify_it3,
    verify_mc1,
    verify_mc2,
    verify_mc3,
    verify_mt4,
    verify_mt5,
)
from .report import FAILS, HOLDS, UNMET, ChainReport, HypothesesUnmet

TOOL = "jensengap"
VERSION = "0.1.0"
SCHEMA_VERSION = 1

AFFINE_IDS = ("mt1", "mt2", "mt3")
FUNCTIONAL_IDS = ("it2", "it3", "ic1", "ic2", "ic3", "mt4", "mt5", "mc1", "mc2", "mc3")
ALL_IDS = AFFINE_IDS + FUNCTIONAL_IDS

MODES = {
    "mt1": ("proper", "literal_alpha"),
    "mt2": ("auto", "a", "b", "c"),
    "mt3": ("auto", "a", "b", "c"),
    "it2": ("standard",),
    "it3": ("standard",),
    "ic1": ("standard",),
    "ic2": ("standard",),
    "ic3": ("standard",),
    "mt4": ("region_restricted", "literal"),
    "mt5": ("region_restricted", "literal"),
    "mc1": ("region_restricted", "literal"),
    "mc2": ("region_restricted", "literal"),
    "mc3": ("region_restricted", "literal"),
}


def default_mode(theorem_id: str) -> str:
    return MODES[theorem_id][0]


def dumps(obj: Any) -> str:
    """Canonical document text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _need(payload: dict, key: str, theorem_id: str) -> Any:
    if key not in payload or payload[key] is None:
        raise StructureError(f"{theorem_id} payload is missing field {key!r}")
    return payload[key]


def interval_from(v: Any) -> IntervalR:
    if not (isinstance(v, (list, tuple)) and len(v) == 2):
        raise StructureError(f"interval must be a [lo, hi] pair, got {v!r}")
    return IntervalR(float(v[0]), float(v[1]))


def interval_to(iv: IntervalR) -> list[float]:
    return [iv.lo, iv.hi]


def group_from(d: Any) -> WeightedGroup:
    if not isinstance(d, dict):
        raise StructureError(f"weighted group must be an object, got {d!r}")
    return WeightedGroup(tuple(d.get("points", ())), tuple(d.get("weights", ())))


def group_to(g: WeightedGroup) -> dict:
    return {"points": list(g.points), "weights": list(g.weights)}


def config_from(d: Any) -> AffineConfig:
    if not isinstance(d, dict):
        raise StructureError(f"affine configuration must be an object, got {d!r}")
    minus = d.get("minus_c") or {"points": [], "weights": []}
    return AffineConfig(
        group_from(_need(d, "plus_a", "config")),
        group_from(_need(d, "plus_b", "config")),
        group_from(minus),
    )


def config_to(cfg: AffineConfig) -> dict:
    return {
        "plus_a": group_to(cfg.plus_a),
        "plus_b": group_to(cfg.plus_b),
        "minus_c": group_to(cfg.minus_c),
    }


def mt1_scenario_from(payload: dict) -> Mt1Scenario:
    return Mt1Scenario(
        left=config_from(_need(payload, "left", "two-sided")),
        right=config_from(_need(payload, "right", "two-sided")),
        c=float(_need(payload, "c", "two-sided")),
        interval=interval_from(_need(payload, "interval", "two-sided")),
    )


def mt1_scenario_to(s: Mt1Scenario) -> dict:
    return {
        "c": s.c,
        "interval": interval_to(s.interval),
        "left": config_to(s.left),
        "right": config_to(s.right),
    }


def fn_spec_from_string(spec: str, point: float = 0.0) -> dict:
    """Parse "name" or "name:param" into a function-spec object."""
    name, _, arg = spec.partition(":")
    d: dict[str, Any] = {"name": name.strip(), "point": float(point)}
    arg = arg.strip()
    if arg:
        if d["name"] == "tabulated-spline":
            d["path"] = arg
        else:
            d["param"] = float(arg)
    return d


def model_from_spec(d: dict) -> FunctionModel:
    if not isinstance(d, dict) or "name" not in d:
        raise StructureError(f"function spec must be an object with a name, got {d!r}")
    point = float(d.get("point", 0.0))
    name = d["name"]
    if name == "tabulated-spline":
        return catalog(name, d.get("path"), point)
    return catalog(name, d.get("param"), point)


def make_scenario(
    theorem_id: str,
    mode: str | None,
    function: dict,
    payload: dict,
    seed: int | None = None,
) -> dict:
    if theorem_id not in ALL_IDS:
        raise StructureError(f"unknown theorem id {theorem_id!r}")
    mode = mode or default_mode(theorem_id)
    if mode not in MODES[theorem_id]:
        raise StructureError(f"theorem {theorem_id} has no mode {mode!r}")
    doc: dict[str, Any] = {
        "schema_version": SCHEMA_VERSION,
        "theorem_id": theorem_id,
        "mode": mode,
        "function": function,
        "payload": payload,
    }
    if seed is not None:
        doc["seed"] = seed
    return doc


def _num(x: Any) -> Any:
    if isinstance(x, float) and math.isnan(x):
        return None
    return x


def _checks_json(vr: ValidityReport | None) -> list[dict]:
    if vr is None:
        return []
    return [{"name": c.name, "residual": _num(c.residual), "ok": c.ok} for c in vr.checks]


def _base(theorem_id: str, mode: str) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "verification",
        "theorem_id": theorem_id,
        "mode": mode,
        "provenance": {"tool": TOOL, "version": VERSION},
    }


def _from_chain(base: dict, rep: ChainReport) -> dict:
    base["verdict"] = rep.verdict
    base["margins"] = [_num(m) for m in rep.margins]
    base["margin"] = _num(min(rep.margins)) if rep.margins else None
    base["chain"] = list(rep.chain)
    values = {}
    for key in ("gap_left", "gap_right", "spread_left", "spread_right", "mid_left", "mid_right"):
        v = getattr(rep, key)
        if not math.isnan(v):
            values[key] = v
    base["values"] = values
    base["hypotheses"] = _checks_json(rep.hypotheses)
    base["details"] = {k: _num(v) for k, v in rep.details.items()}
    return base


def _from_margins(
    base: dict,
    margins: Sequence[float],
    cs: CheckSet,
    tol: float,
    details: dict | None = None,
    conclusion_ok: bool = True,
) -> dict:
    margins = list(margins)
    ok = conclusion_ok and (not margins or min(margins) >= -tol)
    base["verdict"] = HOLDS if ok else FAILS
    base["margins"] = margins
    base["margin"] = min(margins) if margins else None
    base["chain"] = []
    base["values"] = {}
    base["hypotheses"] = _checks_json(cs.report())
    base["details"] = details or {}
    return base


def _from_unmet(base: dict, exc: HypothesesUnmet) -> dict:
    base["verdict"] = UNMET
    base["margins"] = []
    base["margin"] = None
    base["chain"] = []
    base["values"] = {}
    if exc.full_report is not None:
        base["hypotheses"] = _checks_json(exc.full_report)
    else:
        base["hypotheses"] = [
            {"name": n, "residual": _num(r), "ok": False} for n, r in exc.violations
        ]
    base["details"] = {}
    return base


def _maybe_interval(payload: dict, key: str) -> IntervalR | None:
    v = payload.get(key)
    return None if v is None else interval_from(v)


def _maybe_float(payload: dict, key: str) -> float | None:
    v = payload.get(key)
    return None if v is None else float(v)


def run_payload(
    theorem_id: str, mode: str | None, f: FunctionModel, payload: dict, tol: float = EPS_EQ
) -> dict:
    """Dispatch a payload to the matching verifier and normalize the outcome."""
    if theorem_id not in ALL_IDS:
        raise StructureError(f"unknown theorem id {theorem_id!r}")
    mode = mode or default_mode(theorem_id)
    if mode not in MODES[theorem_id]:
        raise StructureError(f"theorem {theorem_id} has no mode {mode!r}")
    if not isinstance(payload, dict):
        raise StructureError("payload must be an object")
    base = _base(theorem_id, mode)
    p = payload

    if theorem_id in AFFINE_IDS:
        s = mt1_scenario_from(p)
        if theorem_id == "mt1":
            reading = "literal_alpha" if mode == "literal_alpha" else "matched"
            rep = verify_mt1(f, s, A=_maybe_float(p, "A"), tol=tol, weight_reading=reading)
        elif theorem_id == "mt2":
            rep = verify_mt2(f, s, branch=mode, tol=tol)
        else:
            rep = verify_mt3(
                f,
                s,
                branch=mode,
                c_convention=p.get("c_convention", "mirrored"),
                tol=tol,
            )
        return _from_chain(base, rep)

    if theorem_id == "it2":
        rep = verify_it2(
            f,
            _need(p, "L", theorem_id),
            _need(p, "g", theorem_id),
            _need(p, "H", theorem_id),
            _need(p, "h", theorem_id),
            inner=interval_from(_need(p, "inner", theorem_id)),
            interval=interval_from(_need(p, "interval", theorem_id)),
            tol=tol,
        )
        return _from_chain(base, rep)

    if theorem_id == "mt4":
        rep = verify_mt4(
            f,
            _need(p, "L", theorem_id),
            _need(p, "H", theorem_id),
            _need(p, "g1", theorem_id),
            _need(p, "h1", theorem_id),
            _need(p, "g2", theorem_id),
            _need(p, "h2", theorem_id),
            c=float(_need(p, "c", theorem_id)),
            interval=interval_from(_need(p, "interval", theorem_id)),
            inner=interval_from(_need(p, "inner", theorem_id)),
            inner2=_maybe_interval(p, "inner2"),
            mode=mode,
            A=_maybe_float(p, "A"),
            tol=tol,
        )
        return _from_chain(base, rep)

    if theorem_id == "mt5":
        rep = verify_mt5(
            f,
            _need(p, "Ls", theorem_id),
            _need(p, "gs", theorem_id),
            _need(p, "Hs", theorem_id),
            _need(p, "hs", theorem_id),
            _need(p, "Ls_star", theorem_id),
            _need(p, "gs_star", theorem_id),
            _need(p, "Hs_star", theorem_id),
            _need(p, "hs_star", theorem_id),
            c=float(_need(p, "c", theorem_id)),
            interval=interval_from(_need(p, "interval", theorem_id)),
            inner=interval_from(_need(p, "inner", theorem_id)),
            inner2=_maybe_interval(p, "inner2"),
            mode=mode,
            A=_maybe_float(p, "A"),
            tol=tol,
        )
        return _from_chain(base, rep)

    cs = CheckSet(tol)
    try:
        if theorem_id == "ic1":
            m = verify_ic1(
                f,
                _need(p, "L", theorem_id),
                _need(p, "g", theorem_id),
                inner=interval_from(_need(p, "inner", theorem_id)),
                tol=tol,
                checks=cs,
            )
            return _from_margins(base, [m], cs, tol)
        if theorem_id == "ic2":
            ms = verify_ic2(
                f,
                _need(p, "Ls", theorem_id),
                _need(p, "gs", theorem_id),
                inners=[interval_from(x) for x in _need(p, "inners", theorem_id)],
                interval=interval_from(_need(p, "interval", theorem_id)),
                tol=tol,
                checks=cs,
            )
            return _from_margins(base, ms, cs, tol)
        if theorem_id == "ic3":
            inc, m = verify_ic3(
                f,
                _need(p, "Ls", theorem_id),
                _need(p, "gs", theorem_id),
                interval=interval_from(_need(p, "interval", theorem_id)),
                tol=tol,
                checks=cs,
            )
            return _from_margins(
                base, [m], cs, tol, details={"inclusion": inc}, conclusion_ok=inc
            )
        if theorem_id == "it3":
            m = verify_it3(
                f,
                _need(p, "Ls", theorem_id),
                _need(p, "gs", theorem_id),
                _need(p, "Hs", theorem_id),
                _need(p, "hs", theorem_id),
                inner=interval_from(_need(p, "inner", theorem_id)),
                interval=interval_from(_need(p, "interval", theorem_id)),
                tol=tol,
                checks=cs,
            )
            return _from_margins(base, [m], cs, tol)
        if theorem_id == "mc1":
            m = verify_mc1(
                f,
                _need(p, "L", theorem_id),
                _need(p, "g1", theorem_id),
                _need(p, "g2", theorem_id),
                c=float(_need(p, "c", theorem_id)),
                inner=interval_from(_need(p, "inner", theorem_id)),
                interval=_maybe_interval(p, "interval"),
                mode=mode,
                tol=tol,
                checks=cs,
            )
            return _from_margins(base, [m], cs, tol)
        if theorem_id == "mc2":
            h_inners = p.get("h_inners")
            ms = verify_mc2(
                f,
                _need(p, "Ls", theorem_id),
                _need(p, "gs", theorem_id),
                _need(p, "hs", theorem_id),
                c=float(_need(p, "c", theorem_id)),
                interval=interval_from(_need(p, "interval", theorem_id)),
                g_inners=[interval_from(x) for x in _need(p, "g_inners", theorem_id)],
                h_inners=None if h_inners is None else [interval_from(x) for x in h_inners],
                mode=mode,
                tol=tol,
                checks=cs,
            )
            return _from_margins(base, ms, cs, tol)
        if theorem_id == "mc3":
            inc, m = verify_mc3(
                f,
                _need(p, "Ls", theorem_id),
                _need(p, "gs", theorem_id),
                _need(p, "hs", theorem_id),
                c=float(_need(p, "c", theorem_id)),
                interval=interval_from(_need(p, "interval", theorem_id)),
                mode=mode,
                tol=tol,
                checks=cs,
            )
            return _from_margins(
                base, [m], cs, tol, details={"inclusion": inc}, conclusion_ok=inc
            )
    except HypothesesUnmet as exc:
        return _from_unmet(base, exc)
    raise StructureError(f"unhandled theorem id {theorem_id!r}")


def run_scenario(doc: Any, tol: float | None = None) -> dict:
    """Verify a parsed scenario document and return its report."""
    if not isinstance(doc, dict):
        raise StructureError("scenario document must be a JSON object")
    sv = doc.get("schema_version")
    if sv != SCHEMA_VERSION:
        raise StructureError(f"unsupported schema_version {sv!r} (expected {SCHEMA_VERSION})")
    theorem_id = doc.get("theorem_id")
    if theorem_id not in ALL_IDS:
        raise StructureError(f"unknown theorem id {theorem_id!r}")
    mode = doc.get("mode") or default_mode(theorem_id)
    f = model_from_spec(doc.get("function") or {})
    eff_tol = tol
    if eff_tol is None:
        eff_tol = float((doc.get("tolerances") or {}).get("eq", EPS_EQ))
    report = run_payload(theorem_id, mode, f, _need(doc, "payload", theorem_id), eff_tol)
    if "seed" in doc:
        report["provenance"]["seed"] = doc["seed"]
    return report
