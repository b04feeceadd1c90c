"""
Birleşik gevşeme: |σ₁(H,t) − σ₁(G,t)| ≺ 1/(N²t)

aux1 = |σ₁(H,t) − σ₁(G,t)|, aux2 = |σ_N(H,t) − σ_N(G,t)|
σ alanları σ(H,t)'ye aittir.
"""
from typing import List

import numpy as np
import pandas as pd

from ..config import get_settings
from ..ensembles import RngStreamSpec, sample_matrix
from ..spectra import SingularSpectrum
from .base import BaseExperiment, coupled_pairs, make_record, reference_law
from .config import ExperimentConfig, ExperimentConfigError, SummaryStats, TrialRecord
from .runner import G_STREAM, H_STREAM
from .stats import bootstrap_slope_ci, fit_slope, quantile_summary


T_SLOPE_RANGE = (-1.4, -0.6)
N_SLOPE_RANGE = (-2.5, -1.5)
T_MAX = 0.5


class CoupledRelaxationExperiment(BaseExperiment):
    name = "coupled"

    def validate(self, cfg: ExperimentConfig) -> None:
        if not cfg.lambda_or_t_grid:
            raise ExperimentConfigError("t ızgarası boş", "lambda_or_t_grid")
        if cfg.M_offset != "zero":
            raise ExperimentConfigError("birleşik DBM kare matris gerektirir", "M_offset")
        for N in cfg.N_list:
            for t in cfg.lambda_or_t_grid:
                if not 5.0 / N <= t <= T_MAX:
                    raise ExperimentConfigError(f"t ∈ [5/N, {T_MAX}] olmalı (N = {N}, t = {t})",
                                                "lambda_or_t_grid")

    def trial(self, cfg: ExperimentConfig, N: int, index: int,
              stream: RngStreamSpec) -> List[TrialRecord]:
        H = sample_matrix(cfg.ensemble, N, N, stream.child(H_STREAM))
        G = sample_matrix(reference_law(cfg.ensemble), N, N, stream.child(G_STREAM))
        pairs = coupled_pairs(H, G, cfg.lambda_or_t_grid, cfg.step, stream)
        records = []
        for t in cfg.lambda_or_t_grid:
            sH, sG = pairs[t]
            spectrum = SingularSpectrum(values=sH, source_dims=(N, N))
            records.append(make_record(cfg, spectrum, N, N, t, index,
                                       abs(sH[0] - sG[0]), abs(sH[-1] - sG[-1])))
        return records

    def summarize(self, cfg: ExperimentConfig, frame: pd.DataFrame) -> SummaryStats:
        summary = SummaryStats(experiment=cfg.name)
        constant = get_settings().calibration.relaxation_constant
        ts = sorted(frame["param"].unique())
        Ns = sorted(frame["N"].unique())
        gaps = {}

        for (N, t), group in frame.groupby(["N", "param"], sort=True):
            key = f"N={N},t={t:g}"
            gap = group["aux1"].to_numpy()
            gaps[(N, t)] = gap
            scaled = N * N * t * gap
            summary.quantiles[key] = quantile_summary(scaled)
            summary.quantiles[f"{key}:sigmaN"] = quantile_summary(N * t * group["aux2"].to_numpy())
            median = float(np.median(scaled))
            summary.margins[f"ratio[{key}]"] = median / constant
            summary.checks[f"median_le_constant[{key}]"] = median <= constant

        if len(ts) >= 2:
            for N in Ns:
                fit = bootstrap_slope_ci(ts, [gaps[(N, t)] for t in ts],
                                         rng=np.random.default_rng(int(cfg.master_seed)))
                summary.slopes[f"t[N={N}]"] = fit.to_dict()
                summary.checks[f"t_slope_in_range[N={N}]"] = fit.within(*T_SLOPE_RANGE)
        if len(Ns) >= 2:
            for t in ts:
                fit = fit_slope(Ns, [float(np.median(gaps[(N, t)])) for N in Ns])
                summary.slopes[f"N[t={t:g}]"] = fit.to_dict()
                summary.checks[f"N_slope_in_range[t={t:g}]"] = fit.within(*N_SLOPE_RANGE)
        return summary


def run_coupled_relaxation(cfg: ExperimentConfig) -> SummaryStats:
    return CoupledRelaxationExperiment().run(cfg)
