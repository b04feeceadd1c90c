"""
Sandviç sınırı, karşılaştırma bütçesi ve Lindeberg değişim deneyi

F(Tr f₂(H)) ≤ 1{σ₁(H) > r/N} ≤ F(Tr f₁(H))

Bütçe: N^{Cε}(1/(ρN²) + (ρN^a)⁵/√N + tρN^a), t = |m₄(X) − m₄(Y)|.
Deney, E F(Tr f(X)) − E F(Tr f(Y)) farkını bütün matrisler örnekleyerek
tahmin eder.
"""
import logging
import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import numpy as np
import pandas as pd

from ..config import get_settings
from ..ensembles import EntryLaw, MatrixSample, RngStreamSpec, as_generator, sample_matrix
from ..spectra import SymmetrizedSpectrum, singular_values
from ..utils import DataValidator, parallel_map
from .cutoffs import F, ComparisonError, TestFunctionSpec


logger = logging.getLogger(__name__)

MOMENT_MATCH_TOLERANCE = 1e-12
X_STREAM = 1
Y_STREAM = 2


class SandwichViolation(ComparisonError):
    """Sandviç sıralaması bozuldu; ihlal eden spektrum ekli"""

    def __init__(self, message: str, spectrum: Optional[SymmetrizedSpectrum] = None):
        super().__init__(message)
        self.spectrum = spectrum


class MomentMismatchError(ComparisonError):
    """İlk üç moment eşleşmiyor"""
    pass


def trace_f(spec: TestFunctionSpec, spectrum: SymmetrizedSpectrum) -> float:
    """Tr f(H) = Σ_{k=±1..±N} f(s_k)"""
    return float(np.sum(spec.value(spectrum.values)))


@dataclass(frozen=True)
class SandwichResult:
    lhs: float
    indicator: float
    rhs: float

    @property
    def ordered(self) -> bool:
        return self.lhs <= self.indicator <= self.rhs

    def as_tuple(self) -> Tuple[float, float, float]:
        return (self.lhs, self.indicator, self.rhs)


def ladder_exponent(N: int, rho: float) -> float:
    """ρ = N^{-a} olacak a, (1, 2) aralığına kırpılmış"""
    if N < 2:
        raise ComparisonError("Sandviç için N ≥ 2 gerekli")
    # yuvarlama payı: ρ ≥ N^-a sağlanmalı
    return min(1.999, max(1.001, -math.log(rho) / math.log(N) + 1e-9))


def sandwich_from_spectrum(spectrum: SymmetrizedSpectrum, r: float, rho: float,
                           a: Optional[float] = None) -> SandwichResult:
    N = spectrum.N
    a = ladder_exponent(N, rho) if a is None else a
    f1 = TestFunctionSpec(r=r, rho=rho, a=a, N=N, variant="f1")
    f2 = TestFunctionSpec(r=r, rho=rho, a=a, N=N, variant="f2")
    result = SandwichResult(
        lhs=F(trace_f(f2, spectrum)),
        indicator=float(spectrum.at(1) > r / N),
        rhs=F(trace_f(f1, spectrum)),
    )
    if not result.ordered:
        raise SandwichViolation(
            f"Sandviç bozuldu: {result.as_tuple()} (σ₁ = {spectrum.at(1):.6g}, r/N = {r / N:.6g})",
            spectrum=spectrum,
        )
    return result


def sandwich_check(H: MatrixSample, r: float, rho: float,
                   a: Optional[float] = None) -> SandwichResult:
    return sandwich_from_spectrum(singular_values(H).symmetrized(), r, rho, a)


def comparison_budget(N: int, rho: float, a: float, t: float, eps: float,
                      C: Optional[float] = None) -> float:
    if not DataValidator.is_positive_int(N) or N < 2:
        raise ComparisonError(f"N ≥ 2 olmalı: {N}")
    if not 1.0 < a < 2.0:
        raise ComparisonError(f"a ∈ (1, 2) olmalı: {a}")
    if not DataValidator.in_range(rho, N ** (-a), 1.0 / N):
        raise ComparisonError(f"ρ ∈ [N^-a, N^-1] olmalı: {rho}")
    if t < 0 or eps <= 0:
        raise ComparisonError(f"t ≥ 0 ve ε > 0 olmalı: t = {t}, ε = {eps}")
    C = get_settings().calibration.budget_constant if C is None else C
    scaled = rho * N**a
    return N ** (C * eps) * (1.0 / (rho * N * N) + scaled**5 / math.sqrt(N) + t * scaled)


def calibrate_budget_constant(delta_hat: float, N: int, rho: float, a: float, t: float,
                              eps: float) -> float:
    """delta_hat ≤ budget sağlayan en küçük C ≥ 0"""
    base = comparison_budget(N, rho, a, t, eps, C=0.0)
    if delta_hat <= base:
        return 0.0
    return math.log(delta_hat / base) / (eps * math.log(N))


def require_matched_moments(lawX: EntryLaw, lawY: EntryLaw) -> float:
    """İlk üç moment eşleşmeli; dördüncü moment farkı t döner"""
    if lawX.is_complex != lawY.is_complex:
        raise MomentMismatchError("Reel ve kompleks yasalar karşılaştırılamaz")
    for k in range(3):
        gap = abs(lawX.moments[k] - lawY.moments[k])
        if gap > MOMENT_MATCH_TOLERANCE:
            raise MomentMismatchError(
                f"m{k + 1} farklı: {lawX.moments[k]} vs {lawY.moments[k]} ({lawX.label} / {lawY.label})"
            )
    return lawX.fourth_moment_gap(lawY)


@dataclass(eq=False)
class LindebergResult:
    delta_hat: float
    stderr: float
    t: float
    budget: float
    C: float
    frame: pd.DataFrame = field(repr=False)

    def to_summary(self) -> Dict[str, float]:
        return {"delta_hat": self.delta_hat, "stderr": self.stderr, "t": self.t,
                "budget": self.budget, "C": self.C}

    def within_budget(self) -> bool:
        return self.delta_hat <= self.budget


def _difference(frame: pd.DataFrame) -> Tuple[float, float]:
    x = frame.loc[frame["ensemble"] == "X", "F_value"].to_numpy()
    y = frame.loc[frame["ensemble"] == "Y", "F_value"].to_numpy()
    delta = abs(float(np.mean(x)) - float(np.mean(y)))
    if x.size < 2 or y.size < 2:
        return delta, math.nan
    stderr = math.sqrt(np.var(x, ddof=1) / x.size + np.var(y, ddof=1) / y.size)
    return delta, stderr


def lindeberg_swap_experiment(lawX: EntryLaw, lawY: EntryLaw, N: int, spec: TestFunctionSpec,
                              trials: int, rng: RngStreamSpec, threads: int = 1,
                              eps: Optional[float] = None,
                              C: Optional[float] = None) -> LindebergResult:
    """|E F(Tr f(X)) − E F(Tr f(Y))| Monte Carlo tahmini ve bütçe"""
    t = require_matched_moments(lawX, lawY)
    if spec.N != N:
        raise ComparisonError(f"Test fonksiyonu N = {spec.N}, deney N = {N}")
    if trials < 1:
        raise ComparisonError(f"trials ≥ 1 olmalı: {trials}")
    calibration = get_settings().calibration
    eps = calibration.epsilon if eps is None else eps
    C = calibration.budget_constant if C is None else C

    def one_trial(i: int) -> List[Dict[str, Any]]:
        stream = rng.child(i + 1)
        rows = []
        for name, law, sub in (("X", lawX, X_STREAM), ("Y", lawY, Y_STREAM)):
            A = sample_matrix(law, N, N, stream.child(sub))
            value = trace_f(spec, singular_values(A).symmetrized())
            rows.append({"trial": i, "ensemble": name, "trace_f": value, "F_value": F(value)})
        return rows

    rows = [row for chunk in parallel_map(one_trial, trials, threads) for row in chunk]
    frame = pd.DataFrame(rows, columns=["trial", "ensemble", "trace_f", "F_value"])
    delta, stderr = _difference(frame)
    budget = comparison_budget(N, spec.rho, spec.a, t, eps, C)
    logger.info(f"✓ Lindeberg: δ̂ = {delta:.4g} ± {stderr:.2g}, t = {t:.3g}, bütçe = {budget:.4g}")
    return LindebergResult(delta_hat=delta, stderr=stderr, t=t, budget=budget, C=C, frame=frame)


def bootstrap_ordering(small_gap: LindebergResult, large_gap: LindebergResult,
                       resamples: int, rng: Any) -> float:
    """Yeniden örneklemelerde δ̂(küçük t) ≤ δ̂(büyük t) oranı"""
    if small_gap.t > large_gap.t:
        small_gap, large_gap = large_gap, small_gap
    gen = as_generator(rng)

    def resample(result: LindebergResult) -> float:
        trials = result.frame["trial"].unique()
        picked = gen.choice(trials, size=trials.size, replace=True)
        counts = pd.Series(picked).value_counts()
        weights = result.frame["trial"].map(counts).fillna(0.0).to_numpy()
        x = result.frame["ensemble"].to_numpy() == "X"
        values = result.frame["F_value"].to_numpy()
        mean_x = np.sum(weights[x] * values[x]) / np.sum(weights[x])
        mean_y = np.sum(weights[~x] * values[~x]) / np.sum(weights[~x])
        return abs(float(mean_x - mean_y))

    hits = sum(resample(small_gap) <= resample(large_gap) for _ in range(resamples))
    return hits / resamples
