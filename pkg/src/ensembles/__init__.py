"""Ensembles Module - giriş yasaları, örnekleme, moment eşleme"""
from .rng import RngStreamSpec, DEFAULT_ALGORITHM_LABEL, as_generator
from .laws import (
    EntryLaw,
    EnsembleError,
    LAW_KINDS,
    draw_standard,
    match_first_three_moments,
)
from .sampling import (
    MatrixSample,
    MomentReport,
    sample_matrix,
    draw_entries,
    check_assumptions,
)

__all__ = [
    "RngStreamSpec",
    "DEFAULT_ALGORITHM_LABEL",
    "as_generator",
    "EntryLaw",
    "EnsembleError",
    "LAW_KINDS",
    "draw_standard",
    "match_first_three_moments",
    "MatrixSample",
    "MomentReport",
    "sample_matrix",
    "draw_entries",
    "check_assumptions",
]
