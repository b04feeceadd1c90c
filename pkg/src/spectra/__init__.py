"""Spectra Module - tekil değerler, limit yasaları, yerel yasa, karakteristikler"""
from .singular import (
    SingularSpectrum,
    SymmetrizedSpectrum,
    SpectrumError,
    singular_values,
    girko_symmetrize,
    girko_eigenvalues,
    condition_number,
    is_singular,
    augment_matrix,
    symmetric_indices,
)
from .limits import (
    SpectralDomainError,
    SpectralPoint,
    TypicalLocations,
    rho_sc,
    rho_mp,
    semicircle_cdf,
    gamma_quantiles,
    typical_locations,
    default_repository,
    m_sc,
    m_sc_bounds_check,
    sqrt_z2_minus_4,
)
from .local_law import (
    RigidityReport,
    empirical_stieltjes,
    local_law_check,
    trace_local_law,
    rigidity_allowance,
    rigidity_check,
)
from .characteristics import (
    GeometryDiagnostics,
    characteristic,
    characteristic_geometry_check,
)

__all__ = [
    "SingularSpectrum",
    "SymmetrizedSpectrum",
    "SpectrumError",
    "singular_values",
    "girko_symmetrize",
    "girko_eigenvalues",
    "condition_number",
    "is_singular",
    "augment_matrix",
    "symmetric_indices",
    "SpectralDomainError",
    "SpectralPoint",
    "TypicalLocations",
    "rho_sc",
    "rho_mp",
    "semicircle_cdf",
    "gamma_quantiles",
    "typical_locations",
    "default_repository",
    "m_sc",
    "m_sc_bounds_check",
    "sqrt_z2_minus_4",
    "RigidityReport",
    "empirical_stieltjes",
    "local_law_check",
    "trace_local_law",
    "rigidity_allowance",
    "rigidity_check",
    "GeometryDiagnostics",
    "characteristic",
    "characteristic_geometry_check",
]
