"""
Deneyler için ortak iskelet
"""
import logging
import math
from abc import abstractmethod
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from ..config import get_settings
from ..dynamics import coupled_dbm
from ..ensembles import EntryLaw, MatrixSample, RngStreamSpec
from ..interfaces import ExperimentInterface
from ..spectra import SingularSpectrum, condition_number
from .config import CSV_COLUMNS, ExperimentConfig, SummaryStats, TrialRecord
from .runner import NOISE_STREAM, TrialRunner
from .stats import binomial_stderr, empirical_survival, non_increasing


TREND_SLACK = 0.1


def reference_law(law: EntryLaw) -> EntryLaw:
    """Aynı (reel/kompleks) türde Gauss yasası"""
    return EntryLaw.gaussian_complex() if law.is_complex else EntryLaw.gaussian()


def records_frame(records: Sequence[TrialRecord]) -> pd.DataFrame:
    return pd.DataFrame([r.to_row() for r in records], columns=CSV_COLUMNS)


def make_record(cfg: ExperimentConfig, spectrum: SingularSpectrum, N: int, M: int, param: float,
                trial: int, aux1: float = math.nan, aux2: float = math.nan) -> TrialRecord:
    return TrialRecord(
        experiment=cfg.name,
        N=N,
        M=M,
        ensemble=cfg.ensemble.label,
        param=float(param),
        trial=trial,
        seed=int(cfg.master_seed),
        sigma1=spectrum.sigma1,
        sigmaN=spectrum.sigmaN,
        kappa=condition_number(spectrum),
        aux1=float(aux1),
        aux2=float(aux2),
    )


def coupled_pairs(H: MatrixSample, G: MatrixSample, times: Sequence[float], dt: float,
                  stream: RngStreamSpec) -> Dict[float, Tuple[np.ndarray, np.ndarray]]:
    """Ortak gürültülü DBM'den her t için (σ(H,t), σ(G,t))"""
    run = coupled_dbm(H, G, list(times), dt, stream.child(NOISE_STREAM))
    return {t: run.pair_at(t) for t in times}


def survival_sandwich(values_H: np.ndarray, values_G: np.ndarray, r: float, shift: float,
                      allowance: float) -> Dict[str, float]:
    """P(G > r+s) − a ≤ P(H > r) ≤ P(G > r−s) + a, örnekleme hatası dahil marjlar"""
    n_H, n_G = values_H.size, values_G.size
    p_H = empirical_survival(values_H, r)
    p_lo = empirical_survival(values_G, r + shift)
    p_hi = empirical_survival(values_G, r - shift)
    sampling_lo = 3.0 * math.hypot(binomial_stderr(p_H, n_H), binomial_stderr(p_lo, n_G)) + 1.0 / n_H
    sampling_hi = 3.0 * math.hypot(binomial_stderr(p_H, n_H), binomial_stderr(p_hi, n_G)) + 1.0 / n_H
    lower_margin = p_H - (p_lo - allowance - sampling_lo)
    upper_margin = (p_hi + allowance + sampling_hi) - p_H
    return {
        "p_H": p_H,
        "p_G_lower": p_lo,
        "p_G_upper": p_hi,
        "margin": min(lower_margin, upper_margin),
        "excess": max(p_lo - p_H, p_H - p_hi, 0.0),
        "sampling": max(sampling_lo, sampling_hi),
    }


def sandwich_over_N(summary: SummaryStats, frame: pd.DataFrame, r_grid: Sequence[float],
                    shift: Callable[[int], float], allowance: Callable[[int], float],
                    label: str) -> None:
    """Her N için aux1 (H) ve aux2 (G) hayatta kalma sandviçi; marjlar ve kontroller özete yazılır"""
    excess_by_N: List[float] = []
    sampling_by_N: List[float] = []
    for N, group in frame.groupby("N", sort=True):
        values_H = group["aux1"].to_numpy()
        values_G = group["aux2"].to_numpy()
        s, a = shift(N), allowance(N)
        violations = 0
        worst_excess = 0.0
        worst_sampling = 0.0
        for r in r_grid:
            result = survival_sandwich(values_H, values_G, r, s, a)
            key = f"{label}[N={N},r={r:g}]"
            summary.margins[key] = result["margin"]
            summary.extras[key] = result
            violations += int(result["margin"] < 0)
            worst_excess = max(worst_excess, result["excess"])
            worst_sampling = max(worst_sampling, result["sampling"])
        summary.quantiles[f"{label}[N={N}]"] = {"allowance": a, "shift": s, "max_excess": worst_excess}
        summary.checks[f"{label}_no_violations[N={N}]"] = violations == 0
        excess_by_N.append(worst_excess)
        sampling_by_N.append(worst_sampling)

    if len(excess_by_N) >= 2:
        summary.checks[f"{label}_excess_non_increasing"] = non_increasing(excess_by_N, sampling_by_N)


def medians_non_increasing(medians: Sequence[float]) -> bool:
    arr = np.asarray(medians, dtype=float)
    return bool(np.all(arr[1:] <= arr[:-1] * (1.0 + TREND_SLACK)))


class BaseExperiment(ExperimentInterface):
    """Denemeleri N üzerinde koşturur ve özeti üretir"""

    name = "base"

    def __init__(self, logger: Optional[logging.Logger] = None):
        self.logger = logger or logging.getLogger(__name__)

    def validate(self, cfg: ExperimentConfig) -> None:
        pass

    @abstractmethod
    def trial(self, cfg: ExperimentConfig, N: int, index: int,
              stream: RngStreamSpec) -> List[TrialRecord]:
        pass

    @abstractmethod
    def summarize(self, cfg: ExperimentConfig, frame: pd.DataFrame) -> SummaryStats:
        pass

    def run(self, cfg: ExperimentConfig) -> SummaryStats:
        self.validate(cfg)
        runner = TrialRunner(cfg, self.logger)
        records: List[TrialRecord] = []
        for N in cfg.N_list:
            records.extend(runner.records(N, lambda i, s, N=N: self.trial(cfg, N, i, s)))

        summary = self.summarize(cfg, records_frame(records))
        summary.config_echo = cfg.to_dict()
        summary.calibration_constants = get_settings().calibration.as_dict()
        summary.records = records
        if summary.passed:
            self.logger.info(f"✓ {cfg.name}: tüm kontroller geçti")
        else:
            self.logger.warning(f"⚠️ {cfg.name}: başarısız kontroller {summary.failed_checks()}")
        return summary
