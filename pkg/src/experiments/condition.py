"""
Koşul sayısı: düzleştirilmiş fark ve genel yasa sandviçi

Satır türleri (param sütunu):
  param = 0   σ(H); aux1 = κ(H)/N, aux2 = κ(G)/N
  param = λ   σ(H+λG); aux1 = κ(H+λG) − κ(G) (ortak G),
              aux2 = κ(H,t) − κ(G′,t), t = log(1+λ²) birleşik DBM
              (yalnızca reel kare yasalar; aksi halde NaN)
"""
import math
from typing import Dict, List

import numpy as np
import pandas as pd

from ..config import get_settings
from ..dynamics import lambda_to_time, smoothed_matrix
from ..ensembles import RngStreamSpec, sample_matrix
from ..spectra import condition_number, singular_values
from .applications import (
    cg_general_bound,
    cg_iterations,
    cg_perturbation_bound,
    lop_estimate,
    lop_general_bound,
    lop_perturbation_bound,
)
from .base import BaseExperiment, coupled_pairs, make_record, reference_law, sandwich_over_N
from .config import ExperimentConfig, ExperimentConfigError, SummaryStats, TrialRecord
from .runner import COUPLED_G_STREAM, G_STREAM, H_STREAM
from .stats import quantile_summary


DEFAULT_R_GRID = (1.0, 2.0, 4.0, 8.0)
SHARED_G_EXPONENT = 0.3
CG_UNIT_ACCURACY = 1.0


def _kappa_of(values: np.ndarray) -> float:
    return math.inf if values[0] <= 0 else float(values[-1] / values[0])


def condition_sandwich(cfg: ExperimentConfig, summary: SummaryStats, frame: pd.DataFrame,
                       label: str = "condition") -> None:
    """κ(H)/N ile κ(G)/N: kaydırma N^(-2/3+ε), hata payı N^(-1/3-ε)"""
    eps = cfg.epsilon
    sandwich_over_N(
        summary, frame, list(cfg.r_grid) or list(DEFAULT_R_GRID),
        shift=lambda N: N ** (-2.0 / 3.0 + eps),
        allowance=lambda N: N ** (-1.0 / 3.0 - eps),
        label=label,
    )


def application_values(cfg: ExperimentConfig, base: pd.DataFrame) -> Dict[str, Dict[str, float]]:
    """Örneklenen medyan κ için LoP ve CG değerleri"""
    values: Dict[str, Dict[str, float]] = {}
    for N, group in base.groupby("N", sort=True):
        M = int(group["M"].iloc[0])
        kappa_H = float(np.median(group["aux1"])) * N
        kappa_G = float(np.median(group["aux2"])) * N
        entry = {"kappa_H": kappa_H, "kappa_G": kappa_G}
        if math.isfinite(kappa_H):
            entry["lop_H"] = lop_estimate(M, N, max(kappa_H, 1.0))
            entry["cg_H"] = cg_iterations(max(kappa_H, 1.0), CG_UNIT_ACCURACY)
        if math.isfinite(kappa_G):
            entry["lop_general_bound"] = lop_general_bound(M, N, max(kappa_G, 1.0), cfg.epsilon)
            entry["cg_general_bound"] = cg_general_bound(max(kappa_G, 1.0), CG_UNIT_ACCURACY, N,
                                                         cfg.epsilon)
        for lam in cfg.lambda_or_t_grid:
            entry[f"lop_bound[lambda={lam:g}]"] = lop_perturbation_bound(
                M, N, max(kappa_G, 1.0), lam, cfg.epsilon)
            entry[f"cg_bound[lambda={lam:g}]"] = cg_perturbation_bound(
                CG_UNIT_ACCURACY, lam, N, cfg.epsilon)
        values[f"N={N}"] = entry
    return values


class ConditionExperiment(BaseExperiment):
    name = "condition"

    def validate(self, cfg: ExperimentConfig) -> None:
        for N in cfg.N_list:
            for lam in cfg.lambda_or_t_grid:
                if lam <= N**-0.5:
                    raise ExperimentConfigError(f"λ > N^-1/2 olmalı (N = {N}, λ = {lam})",
                                                "lambda_or_t_grid")

    def trial(self, cfg: ExperimentConfig, N: int, index: int,
              stream: RngStreamSpec) -> List[TrialRecord]:
        law = cfg.ensemble
        ref = reference_law(law)
        M = cfg.M_for(N)
        H = sample_matrix(law, M, N, stream.child(H_STREAM))
        G = sample_matrix(ref, M, N, stream.child(G_STREAM))
        spectrum_H = singular_values(H)
        kappa_G = condition_number(singular_values(G))
        records = [make_record(cfg, spectrum_H, N, M, 0.0, index,
                               condition_number(spectrum_H) / N, kappa_G / N)]

        grid = list(cfg.lambda_or_t_grid)
        coupled = {}
        if grid and not law.is_complex and M == N:
            G_prime = sample_matrix(ref, N, N, stream.child(COUPLED_G_STREAM))
            coupled = coupled_pairs(H, G_prime, [lambda_to_time(lam) for lam in grid],
                                    cfg.step, stream)

        for lam in grid:
            spectrum = singular_values(smoothed_matrix(H, G, lam))
            shared = condition_number(spectrum) - kappa_G
            paired = math.nan
            if coupled:
                sH, sG = coupled[lambda_to_time(lam)]
                paired = _kappa_of(sH) - _kappa_of(sG)
            records.append(make_record(cfg, spectrum, N, M, lam, index, shared, paired))
        return records

    def summarize(self, cfg: ExperimentConfig, frame: pd.DataFrame) -> SummaryStats:
        summary = SummaryStats(experiment=cfg.name)
        constant = get_settings().calibration.condition_constant
        base = frame[frame["param"] == 0.0]
        smoothed = frame[frame["param"] != 0.0]

        for (N, lam), group in smoothed.groupby(["N", "param"], sort=True):
            key = f"N={N},lambda={lam:g}"
            scale = math.log1p(lam * lam)
            shared = np.abs(group["aux1"].to_numpy()) * scale
            summary.quantiles[key] = quantile_summary(shared)
            finite = shared[np.isfinite(shared)]
            if finite.size:
                summary.margins[f"shared_ratio[{key}]"] = float(np.median(finite)) / N**SHARED_G_EXPONENT

            coupled = np.abs(group["aux2"].to_numpy()) * scale
            if np.all(np.isfinite(coupled)):
                median = float(np.median(coupled))
                summary.quantiles[f"{key}:coupled"] = quantile_summary(coupled)
                summary.margins[f"coupled_ratio[{key}]"] = median / constant
                summary.checks[f"coupled_median_le_constant[{key}]"] = median <= constant

        condition_sandwich(cfg, summary, base)
        summary.extras["applications"] = application_values(cfg, base)
        return summary


def run_condition(cfg: ExperimentConfig) -> SummaryStats:
    return ConditionExperiment().run(cfg)
