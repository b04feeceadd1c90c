"""Experiments Module - Monte Carlo deneyleri, istatistikler ve uygulama hesaplayıcıları"""
from .config import (
    CSV_COLUMNS,
    ExperimentConfig,
    ExperimentConfigError,
    SummaryStats,
    TrialRecord,
)
from .stats import (
    SlopeFit,
    binomial_stderr,
    bootstrap_slope_ci,
    dkw_epsilon,
    empirical_survival,
    fit_slope,
    kolmogorov_critical,
    ks_statistic,
    non_increasing,
    quantile_summary,
)
from .runner import TrialRunner
from .base import BaseExperiment, records_frame, survival_sandwich
from .applications import (
    ApplicationError,
    cg_general_bound,
    cg_iterations,
    cg_perturbation_bound,
    lop_estimate,
    lop_general_bound,
    lop_perturbation_bound,
)
from .smoothed import SmoothedSingularExperiment, run_smoothed_singular
from .relaxation import CoupledRelaxationExperiment, run_coupled_relaxation
from .universality import UniversalityExperiment, run_universality_smallest
from .complex_exact import ComplexExactExperiment, exact_smallest_cdf, run_complex_exact
from .condition import ConditionExperiment, run_condition
from .nonsquare import NonsquareExperiment, run_nonsquare

EXPERIMENTS = {
    "smoothed": run_smoothed_singular,
    "coupled": run_coupled_relaxation,
    "universality": run_universality_smallest,
    "complex-exact": run_complex_exact,
    "condition": run_condition,
    "nonsquare": run_nonsquare,
}

__all__ = [
    "CSV_COLUMNS",
    "ExperimentConfig",
    "ExperimentConfigError",
    "SummaryStats",
    "TrialRecord",
    "SlopeFit",
    "binomial_stderr",
    "bootstrap_slope_ci",
    "dkw_epsilon",
    "empirical_survival",
    "fit_slope",
    "kolmogorov_critical",
    "ks_statistic",
    "non_increasing",
    "quantile_summary",
    "TrialRunner",
    "BaseExperiment",
    "records_frame",
    "survival_sandwich",
    "ApplicationError",
    "cg_general_bound",
    "cg_iterations",
    "cg_perturbation_bound",
    "lop_estimate",
    "lop_general_bound",
    "lop_perturbation_bound",
    "SmoothedSingularExperiment",
    "run_smoothed_singular",
    "CoupledRelaxationExperiment",
    "run_coupled_relaxation",
    "UniversalityExperiment",
    "run_universality_smallest",
    "ComplexExactExperiment",
    "exact_smallest_cdf",
    "run_complex_exact",
    "ConditionExperiment",
    "run_condition",
    "NonsquareExperiment",
    "run_nonsquare",
    "EXPERIMENTS",
]
