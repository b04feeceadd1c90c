"""
En küçük tekil değerin evrenselliği

Nσ₁(H) ile Nσ₁(G) hayatta kalma fonksiyonları r ızgarasında iki yönlü
eşitsizlikle karşılaştırılır:

    P(Nσ₁(G) > r + N^-δ) − a ≤ P(Nσ₁(H) > r) ≤ P(Nσ₁(G) > r − N^-δ) + a
    a = N^ε · max(N^(-1+δ), N^-1/2)

aux1 = Nσ₁(H), aux2 = Nσ₁(G).
"""
from typing import List

import pandas as pd

from ..ensembles import RngStreamSpec, sample_matrix
from ..spectra import singular_values
from .base import BaseExperiment, make_record, reference_law, sandwich_over_N
from .config import ExperimentConfig, SummaryStats, TrialRecord
from .runner import G_STREAM, H_STREAM


DEFAULT_R_GRID = (0.25, 0.5, 1.0, 2.0)


def universality_allowance(N: int, epsilon: float, delta: float) -> float:
    return N**epsilon * max(N ** (-1.0 + delta), N**-0.5)


def universality_sandwich(cfg: ExperimentConfig, summary: SummaryStats, frame: pd.DataFrame,
                          label: str = "universality") -> None:
    sandwich_over_N(
        summary, frame, list(cfg.r_grid) or list(DEFAULT_R_GRID),
        shift=lambda N: N**-cfg.delta,
        allowance=lambda N: universality_allowance(N, cfg.epsilon, cfg.delta),
        label=label,
    )


class UniversalityExperiment(BaseExperiment):
    name = "universality"

    def trial(self, cfg: ExperimentConfig, N: int, index: int,
              stream: RngStreamSpec) -> List[TrialRecord]:
        M = cfg.M_for(N)
        H = sample_matrix(cfg.ensemble, M, N, stream.child(H_STREAM))
        G = sample_matrix(reference_law(cfg.ensemble), M, N, stream.child(G_STREAM))
        spectrum = singular_values(H)
        sigma_G = singular_values(G).sigma1
        return [make_record(cfg, spectrum, N, M, 0.0, index, N * spectrum.sigma1, N * sigma_G)]

    def summarize(self, cfg: ExperimentConfig, frame: pd.DataFrame) -> SummaryStats:
        summary = SummaryStats(experiment=cfg.name)
        universality_sandwich(cfg, summary, frame)
        return summary


def run_universality_smallest(cfg: ExperimentConfig) -> SummaryStats:
    return UniversalityExperiment().run(cfg)
