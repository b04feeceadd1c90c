"""Comparison Module - test fonksiyonları, sandviç, Helffer–Sjöstrand, Lindeberg"""
from .cutoffs import (
    ComparisonError,
    TestFunctionSpec,
    OuterFunction,
    F,
    smoothstep,
    smoothstep_first,
    smoothstep_second,
    eval_test_function,
)
from .hs import HsGrid, HsIntegrand, HsResolutionError, hs_trace, hs_trace_from_eigenvalues
from .lindeberg import (
    SandwichViolation,
    MomentMismatchError,
    SandwichResult,
    LindebergResult,
    trace_f,
    sandwich_check,
    sandwich_from_spectrum,
    comparison_budget,
    calibrate_budget_constant,
    require_matched_moments,
    lindeberg_swap_experiment,
    bootstrap_ordering,
)

__all__ = [
    "ComparisonError",
    "TestFunctionSpec",
    "OuterFunction",
    "F",
    "smoothstep",
    "smoothstep_first",
    "smoothstep_second",
    "eval_test_function",
    "HsGrid",
    "HsIntegrand",
    "HsResolutionError",
    "hs_trace",
    "hs_trace_from_eigenvalues",
    "SandwichViolation",
    "MomentMismatchError",
    "SandwichResult",
    "LindebergResult",
    "trace_f",
    "sandwich_check",
    "sandwich_from_spectrum",
    "comparison_budget",
    "calibrate_budget_constant",
    "require_matched_moments",
    "lindeberg_swap_experiment",
    "bootstrap_ordering",
]
