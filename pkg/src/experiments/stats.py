"""
İstatistik yardımcıları: KS, DKW, binom hatası, kantiller, eğim regresyonu
"""
import math
from dataclasses import dataclass
from typing import Any, Callable, Dict, Sequence, Union

import numpy as np
from scipy import stats

from ..ensembles import as_generator
from ..utils import DataValidator


QUANTILE_LEVELS = (0.5, 0.9, 0.99)


def ks_statistic(samples: Sequence[float],
                 reference: Union[Callable[[Any], Any], Sequence[float]]) -> float:
    """sup|F̂ − F| (tek örnek) ya da sup|F̂₁ − F̂₂| (iki örnek)"""
    values = np.asarray(samples, dtype=float)
    if values.size < 1:
        raise ValueError("En az bir örnek gerekli")
    if not DataValidator.is_sorted(values):
        raise ValueError("Örnekler artan sırada olmalı")
    if callable(reference):
        return float(stats.kstest(values, reference).statistic)
    other = np.asarray(reference, dtype=float)
    if other.size < 1:
        raise ValueError("İkinci örnek boş")
    return float(stats.ks_2samp(values, other).statistic)


def kolmogorov_critical(n: int, alpha: float = 0.05) -> float:
    """Asimptotik Kolmogorov kritik değeri c(α)/√n (α = 0.05 için ≈ 1.358/√n)"""
    return float(stats.kstwobign.ppf(1.0 - alpha)) / math.sqrt(n)


def dkw_epsilon(n: int, alpha: float = 0.05) -> float:
    """Dvoretzky–Kiefer–Wolfowitz bandı: √(log(2/α)/(2n))"""
    return math.sqrt(math.log(2.0 / alpha) / (2.0 * n))


def binomial_stderr(p: float, n: int) -> float:
    return math.sqrt(max(p * (1.0 - p), 0.0) / n)


def empirical_survival(values: Sequence[float], r: float) -> float:
    """P̂(X > r)"""
    return float(np.mean(np.asarray(values, dtype=float) > r))


def quantile_summary(values: Sequence[float], levels: Sequence[float] = QUANTILE_LEVELS) -> Dict[str, float]:
    """{"50": …, "90": …, "99": …}; seviyede monoton"""
    arr = np.asarray(values, dtype=float)
    arr = arr[np.isfinite(arr)]
    if arr.size == 0:
        return {f"{round(100 * q):d}": math.nan for q in levels}
    qs = np.quantile(arr, levels)
    return {f"{round(100 * q):d}": float(v) for q, v in zip(levels, np.maximum.accumulate(qs))}


@dataclass
class SlopeFit:
    slope: float
    intercept: float
    stderr: float
    ci_lo: float
    ci_hi: float

    def within(self, low: float, high: float) -> bool:
        return low <= self.slope <= high

    def to_dict(self) -> Dict[str, float]:
        return {"slope": self.slope, "intercept": self.intercept, "stderr": self.stderr,
                "ci_lo": self.ci_lo, "ci_hi": self.ci_hi}


def fit_slope(x: Sequence[float], y: Sequence[float], log: bool = True) -> SlopeFit:
    """log y ~ log x regresyonu (scipy.stats.linregress)"""
    xa = np.asarray(x, dtype=float)
    ya = np.asarray(y, dtype=float)
    if log:
        keep = (xa > 0) & (ya > 0)
        xa, ya = np.log(xa[keep]), np.log(ya[keep])
    if xa.size < 2:
        raise ValueError("Eğim için en az iki nokta gerekli")
    fit = stats.linregress(xa, ya)
    stderr = float(fit.stderr) if xa.size > 2 else math.nan
    half = 1.96 * stderr if math.isfinite(stderr) else math.nan
    return SlopeFit(slope=float(fit.slope), intercept=float(fit.intercept), stderr=stderr,
                    ci_lo=float(fit.slope) - half, ci_hi=float(fit.slope) + half)


def bootstrap_slope_ci(x: Sequence[float], samples: Sequence[Sequence[float]], rng: Any,
                       resamples: int = 500, statistic: Callable = np.median,
                       level: float = 0.95) -> SlopeFit:
    """Her x için örnekleri yeniden çekip log istatistik ~ log x eğiminin güven aralığı"""
    groups = [np.asarray(s, dtype=float) for s in samples]
    point = fit_slope(x, [statistic(g) for g in groups])
    gen = as_generator(rng)
    slopes = []
    for _ in range(resamples):
        values = [statistic(gen.choice(g, size=g.size, replace=True)) for g in groups]
        try:
            slopes.append(fit_slope(x, values).slope)
        except ValueError:
            continue
    if not slopes:
        return point
    tail = (1.0 - level) / 2.0
    lo, hi = np.quantile(slopes, [tail, 1.0 - tail])
    return SlopeFit(slope=point.slope, intercept=point.intercept, stderr=float(np.std(slopes)),
                    ci_lo=float(lo), ci_hi=float(hi))


def non_increasing(values: Sequence[float], slack: Union[float, Sequence[float]] = 0.0) -> bool:
    """values[i+1] ≤ values[i] + slack[i+1]"""
    arr = np.asarray(values, dtype=float)
    slack_arr = np.broadcast_to(np.asarray(slack, dtype=float), arr.shape)
    return bool(np.all(arr[1:] <= arr[:-1] + slack_arr[1:]))
