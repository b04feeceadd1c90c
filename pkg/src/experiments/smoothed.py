"""
Düzleştirilmiş analiz: σ₁(H + λG) ile √(1+λ²)σ₁(G) karşılaştırması

aux1: ortak G üzerinde D = |σ₁(H+λG) − √(1+λ²)σ₁(G)|
aux2: birleşik biçim, σ(H) ve bağımsız Gauss σ(G′)'den ortak gürültülü
      DBM, t = log(1+λ²) anında √(1+λ²)|σ₁(H,t) − σ₁(G′,t)|
      (yalnızca reel yasalar; kompleks yasada NaN)
Normalize istatistik: N² log(1+λ²) D/√(1+λ²).
"""
import math
from typing import Dict, List

import numpy as np
import pandas as pd

from ..config import get_settings
from ..dynamics import lambda_to_time, smoothed_matrix
from ..ensembles import RngStreamSpec, sample_matrix
from ..spectra import singular_values
from .base import BaseExperiment, coupled_pairs, make_record, medians_non_increasing, reference_law
from .config import ExperimentConfig, ExperimentConfigError, SummaryStats, TrialRecord
from .runner import COUPLED_G_STREAM, G_STREAM, H_STREAM
from .stats import fit_slope, quantile_summary


SHARED_G_EXPONENT = 0.3


def normalized_statistic(D: np.ndarray, N: int, lam: float) -> np.ndarray:
    return N * N * math.log1p(lam * lam) * np.asarray(D, dtype=float) / math.sqrt(1.0 + lam * lam)


class SmoothedSingularExperiment(BaseExperiment):
    name = "smoothed"

    def validate(self, cfg: ExperimentConfig) -> None:
        if not cfg.lambda_or_t_grid:
            raise ExperimentConfigError("λ ızgarası boş", "lambda_or_t_grid")
        for N in cfg.N_list:
            floor = N ** -0.5
            low = min(cfg.lambda_or_t_grid)
            if low <= floor:
                raise ExperimentConfigError(f"λ > N^-1/2 = {floor:.3g} olmalı (N = {N}, λ = {low})",
                                            "lambda_or_t_grid")

    def trial(self, cfg: ExperimentConfig, N: int, index: int,
              stream: RngStreamSpec) -> List[TrialRecord]:
        law = cfg.ensemble
        ref = reference_law(law)
        H = sample_matrix(law, N, N, stream.child(H_STREAM))
        G = sample_matrix(ref, N, N, stream.child(G_STREAM))
        sigma_G = singular_values(G).sigma1

        grid = list(cfg.lambda_or_t_grid)
        coupled = {}
        if not law.is_complex:
            G_prime = sample_matrix(ref, N, N, stream.child(COUPLED_G_STREAM))
            times = [lambda_to_time(lam) for lam in grid]
            coupled = coupled_pairs(H, G_prime, times, cfg.step, stream)

        records = []
        for lam in grid:
            spectrum = singular_values(smoothed_matrix(H, G, lam))
            scale = math.sqrt(1.0 + lam * lam)
            D = abs(spectrum.sigma1 - scale * sigma_G)
            D_coupled = math.nan
            if coupled:
                sH, sG = coupled[lambda_to_time(lam)]
                D_coupled = scale * abs(sH[0] - sG[0])
            records.append(make_record(cfg, spectrum, N, N, lam, index, D, D_coupled))
        return records

    def summarize(self, cfg: ExperimentConfig, frame: pd.DataFrame) -> SummaryStats:
        summary = SummaryStats(experiment=cfg.name)
        constant = get_settings().calibration.smoothed_constant
        medians: Dict[float, List[float]] = {}
        raw_medians: Dict[int, List[float]] = {}

        for (N, lam), group in frame.groupby(["N", "param"], sort=True):
            key = f"N={N},lambda={lam:g}"
            shared = normalized_statistic(group["aux1"].to_numpy(), N, lam)
            summary.quantiles[key] = quantile_summary(shared)
            median_shared = float(np.median(shared))
            summary.margins[f"shared_ratio[{key}]"] = median_shared / N**SHARED_G_EXPONENT
            raw_medians.setdefault(N, []).append(float(np.median(group["aux1"])))

            coupled = group["aux2"].to_numpy()
            if np.all(np.isfinite(coupled)):
                stat = normalized_statistic(coupled, N, lam)
                summary.quantiles[f"{key}:coupled"] = quantile_summary(stat)
                median = float(np.median(stat))
                medians.setdefault(lam, []).append(median)
                summary.margins[f"coupled_ratio[{key}]"] = median / constant
                summary.checks[f"coupled_median_le_constant[{key}]"] = median <= constant

        lambdas = sorted(frame["param"].unique())
        Ns = sorted(frame["N"].unique())
        if len(lambdas) >= 2:
            for N, values in raw_medians.items():
                summary.slopes[f"lambda[N={N}]"] = fit_slope(lambdas, values).to_dict()
        if len(Ns) >= 2:
            for i, lam in enumerate(lambdas):
                per_N = [raw_medians[N][i] for N in Ns]
                summary.slopes[f"N[lambda={lam:g}]"] = fit_slope(Ns, per_N).to_dict()
                if lam in medians:
                    summary.checks[f"coupled_trend_non_increasing[lambda={lam:g}]"] = \
                        medians_non_increasing(medians[lam])
        return summary


def run_smoothed_singular(cfg: ExperimentConfig) -> SummaryStats:
    return SmoothedSingularExperiment().run(cfg)
