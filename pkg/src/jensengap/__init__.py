"""Numerical verification of Jensen-type inequalities on affine combinations
and positive linear functionals, for functions 3-convex at a point."""

from .analysis import (
    AInterval,
    ConvexityClass,
    classify_at_point,
    dd2,
    dd3,
    feasible_A_interval,
)
from .affine import (
    Mt1Scenario,
    check_mt1_hypotheses,
    cross_weighted_gap,
    jensen_affine_gap,
    verify_mt1,
    verify_mt2,
    verify_mt3,
)
from .domain import (
    EPS_EQ,
    AffineConfig,
    IntervalR,
    StructureError,
    ValidityReport,
    WeightedGroup,
    barycenter,
    combination_value,
    hull_membership,
    spread,
    validate_affine_config,
)
from .funclib import (
    DomainError,
    FunctionModel,
    KnownClass,
    TabulatedFunction,
    catalog,
    d2_one_sided,
    eval_fn,
    load_table,
    negate,
    parse_fn_spec,
    tabulated_model,
)
from .functional import (
    DiscreteFunctional,
    FunctionOnOmega,
    RangeConstraint,
    SampleDomain,
    apply,
    check_range,
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
from .scengen import (
    GenSpec,
    InfeasibleError,
    SearchResult,
    gen_affine_config,
    gen_functional_scenario,
    gen_mt1_scenario,
    gen_two_sided_scenario,
    match_spread,
    search_counterexamples,
    straddle_probe_mt4,
    two_point_from_moments,
)
from .scenario import VERSION as __version__

__all__ = [
    "AInterval",
    "AffineConfig",
    "ChainReport",
    "ConvexityClass",
    "DiscreteFunctional",
    "DomainError",
    "EPS_EQ",
    "FAILS",
    "FunctionModel",
    "FunctionOnOmega",
    "GenSpec",
    "HOLDS",
    "HypothesesUnmet",
    "InfeasibleError",
    "IntervalR",
    "KnownClass",
    "Mt1Scenario",
    "RangeConstraint",
    "SampleDomain",
    "SearchResult",
    "StructureError",
    "TabulatedFunction",
    "UNMET",
    "ValidityReport",
    "WeightedGroup",
    "apply",
    "barycenter",
    "catalog",
    "check_mt1_hypotheses",
    "check_range",
    "classify_at_point",
    "combination_value",
    "cross_weighted_gap",
    "d2_one_sided",
    "dd2",
    "dd3",
    "eval_fn",
    "feasible_A_interval",
    "gen_affine_config",
    "gen_functional_scenario",
    "gen_mt1_scenario",
    "gen_two_sided_scenario",
    "hull_membership",
    "jensen_affine_gap",
    "load_table",
    "match_spread",
    "negate",
    "parse_fn_spec",
    "search_counterexamples",
    "spread",
    "straddle_probe_mt4",
    "tabulated_model",
    "two_point_from_moments",
    "validate_affine_config",
    "verify_ic1",
    "verify_ic2",
    "verify_ic3",
    "verify_it2",
    "verify_it3",
    "verify_mc1",
    "verify_mc2",
    "verify_mc3",
    "verify_mt1",
    "verify_mt2",
    "verify_mt3",
    "verify_mt4",
    "verify_mt5",
]
