"""
Kompleks kare matrisler için kesin yasa: P(Nσ₁ ≤ r) = 1 − e^(−r²)

Gauss dışı kompleks yasalarda KS uzaklığı örnekleme hatası + 2·N^-1/2
ile sınırlanır. aux1 = Nσ₁(H).
"""
import math
from typing import Dict, List, Sequence

import numpy as np
import pandas as pd

from ..ensembles import EntryLaw, RngStreamSpec, sample_matrix
from ..spectra import singular_values
from .base import BaseExperiment, make_record
from .config import ExperimentConfig, ExperimentConfigError, SummaryStats, TrialRecord
from .runner import H_STREAM
from .stats import binomial_stderr, kolmogorov_critical, ks_statistic


UNIVERSALITY_RATE_CONSTANT = 2.0


def exact_smallest_cdf(r):
    """1 − exp(−r²), r ≤ 0 için 0"""
    r = np.maximum(np.asarray(r, dtype=float), 0.0)
    return -np.expm1(-r * r)


def exact_ks(scaled_sigma1: Sequence[float]) -> float:
    return ks_statistic(np.sort(np.asarray(scaled_sigma1, dtype=float)), exact_smallest_cdf)


def ks_threshold(law: EntryLaw, N: int, n: int) -> float:
    threshold = kolmogorov_critical(n)
    if law.kind != "gaussian-complex":
        threshold += UNIVERSALITY_RATE_CONSTANT * N**-0.5
    return threshold


def exact_law_report(law: EntryLaw, N: int, scaled_sigma1: np.ndarray) -> Dict[str, float]:
    n = scaled_sigma1.size
    p_hat = float(np.mean(scaled_sigma1 <= 1.0))
    return {
        "ks": exact_ks(scaled_sigma1),
        "threshold": ks_threshold(law, N, n),
        "p_le_1": p_hat,
        "p_le_1_exact": 1.0 - math.exp(-1.0),
        "p_le_1_stderr": binomial_stderr(p_hat, n),
    }


class ComplexExactExperiment(BaseExperiment):
    name = "complex-exact"

    def validate(self, cfg: ExperimentConfig) -> None:
        if not cfg.ensemble.is_complex:
            raise ExperimentConfigError(
                f"kompleks yasa gerekli, verilen {cfg.ensemble.label}", "ensemble")

    def trial(self, cfg: ExperimentConfig, N: int, index: int,
              stream: RngStreamSpec) -> List[TrialRecord]:
        M = cfg.M_for(N)
        spectrum = singular_values(sample_matrix(cfg.ensemble, M, N, stream.child(H_STREAM)))
        return [make_record(cfg, spectrum, N, M, 0.0, index, N * spectrum.sigma1)]

    def summarize(self, cfg: ExperimentConfig, frame: pd.DataFrame) -> SummaryStats:
        summary = SummaryStats(experiment=cfg.name)
        for N, group in frame.groupby("N", sort=True):
            report = exact_law_report(cfg.ensemble, N, group["aux1"].to_numpy())
            key = f"N={N}"
            summary.ks[key] = report["ks"]
            summary.margins[f"ks[{key}]"] = report["threshold"] - report["ks"]
            summary.checks[f"ks_within_threshold[{key}]"] = report["ks"] <= report["threshold"]
            gap = abs(report["p_le_1"] - report["p_le_1_exact"])
            allowed = 3.0 * max(report["p_le_1_stderr"], 1.0 / group.shape[0])
            if cfg.ensemble.kind != "gaussian-complex":
                allowed += UNIVERSALITY_RATE_CONSTANT * N**-0.5
            summary.margins[f"p_le_1[{key}]"] = allowed - gap
            summary.checks[f"p_le_1_matches[{key}]"] = gap <= allowed
            summary.extras[key] = report
        return summary


def run_complex_exact(cfg: ExperimentConfig) -> SummaryStats:
    return ComplexExactExperiment().run(cfg)
