"""Dynamics Module - OU akışı, tekil değer DBM, birleşik akış, çekirdekler"""
from .ou import (
    DynamicsError,
    ou_interpolate,
    ou_sde_path,
    lambda_to_time,
    smoothed_matrix,
)
from .dbm import (
    DbmStepError,
    DbmState,
    DbmTrajectory,
    CoupledRun,
    dbm_step,
    run_dbm,
    run_batch,
    coupled_dbm,
)
from .kernel import (
    StabilityError,
    MassConservationError,
    KernelOperator,
    kernel_coefficients,
    split_kernel,
    integrate_along,
    short_range_propagator,
    mass_outside,
)
from .parabolic import (
    CouplingState,
    CouplingRun,
    WeightedStieltjesSample,
    evolve_phi,
    coupling_run,
    weighted_stieltjes,
    advection_transport_check,
    deterministic_transport_residual,
    rough_decay_check,
    apriori_curve,
    apriori_bound_check,
)
from .homogenization import HatPhi, bulk_window, hat_phi

__all__ = [
    "DynamicsError",
    "ou_interpolate",
    "ou_sde_path",
    "lambda_to_time",
    "smoothed_matrix",
    "DbmStepError",
    "DbmState",
    "DbmTrajectory",
    "CoupledRun",
    "dbm_step",
    "run_dbm",
    "run_batch",
    "coupled_dbm",
    "StabilityError",
    "MassConservationError",
    "KernelOperator",
    "kernel_coefficients",
    "split_kernel",
    "integrate_along",
    "short_range_propagator",
    "mass_outside",
    "CouplingState",
    "CouplingRun",
    "WeightedStieltjesSample",
    "evolve_phi",
    "coupling_run",
    "weighted_stieltjes",
    "advection_transport_check",
    "deterministic_transport_residual",
    "rough_decay_check",
    "apriori_curve",
    "apriori_bound_check",
    "HatPhi",
    "bulk_window",
    "hat_phi",
]
