"""
Limit yasaları: yarım daire (semicircle), Marchenko–Pastur, tipik konumlar, m_sc

√(z²−4) dalı her yerde √(z−2)·√(z+2) (esas karekökler) olarak alınır;
bu seçim üst yarı düzlemde Im m_sc > 0 verir.
"""
import logging
import math
from dataclasses import dataclass
from typing import Any, Dict, Optional

import numpy as np

from ..config import get_settings
from ..database import DatabaseException, SQLiteQuantileRepository
from ..interfaces import QuantileRepositoryInterface
from ..utils import global_cache


logger = logging.getLogger(__name__)

BISECTION_STEPS = 80


class SpectralDomainError(ValueError):
    """Fonksiyonun tanım kümesi dışındaki spektral nokta"""
    pass


def rho_sc(x: Any) -> Any:
    """ρ_sc(x) = (1/2π)√((4−x²)_+)"""
    x = np.asarray(x, dtype=float)
    out = np.sqrt(np.clip(4.0 - x**2, 0.0, None)) / (2.0 * math.pi)
    return float(out) if out.ndim == 0 else out


def rho_mp(x: Any) -> Any:
    """ρ_MP(x) = (1/2π)√((4−x)/x), 0 < x ≤ 4 (kare durum, sıfırda tekillik)"""
    x = np.asarray(x, dtype=float)
    inside = (x > 0) & (x <= 4.0)
    safe = np.where(inside, x, 1.0)
    out = np.where(inside, np.sqrt(np.clip(4.0 - safe, 0.0, None) / safe) / (2.0 * math.pi), 0.0)
    return float(out) if out.ndim == 0 else out


def semicircle_cdf(x: Any) -> Any:
    """½ + x√(4−x²)/(4π) + arcsin(x/2)/π, [−2, 2] dışında 0/1"""
    x = np.clip(np.asarray(x, dtype=float), -2.0, 2.0)
    out = 0.5 + x * np.sqrt(np.clip(4.0 - x**2, 0.0, None)) / (4.0 * math.pi) \
        + np.arcsin(x / 2.0) / math.pi
    out = np.clip(out, 0.0, 1.0)
    return float(out) if out.ndim == 0 else out


@dataclass(eq=False)
class TypicalLocations:
    """γ_k, k ∈ {−N..−1, 1..N}; pozitif yarı saklanır"""
    N: int
    positive: np.ndarray

    def __post_init__(self):
        self.positive = np.asarray(self.positive, dtype=float)
        self.positive.setflags(write=False)

    @property
    def values(self) -> np.ndarray:
        return np.concatenate([-self.positive[::-1], self.positive])

    def at(self, k: int) -> float:
        if k == 0 or abs(k) > self.N:
            raise IndexError(f"Geçersiz indeks {k}")
        g = self.positive[abs(k) - 1]
        return float(g if k > 0 else -g)

    def targets(self) -> np.ndarray:
        k = np.arange(1, self.N + 1)
        return (self.N + k) / (2.0 * self.N)


def _solve_quantiles(N: int) -> np.ndarray:
    targets = (N + np.arange(1, N + 1)) / (2.0 * N)
    lo = np.zeros(N)
    hi = np.full(N, 2.0)
    for _ in range(BISECTION_STEPS):
        mid = 0.5 * (lo + hi)
        below = semicircle_cdf(mid) < targets
        lo = np.where(below, mid, lo)
        hi = np.where(below, hi, mid)
    gamma = 0.5 * (lo + hi)
    gamma[targets >= 1.0] = 2.0
    return gamma


@global_cache.cached()
def gamma_quantiles(N: int) -> TypicalLocations:
    """Yarım daire CDF'i (N+k)/(2N) olan γ_k; ikiye bölme ile"""
    if N < 1:
        raise ValueError(f"N ≥ 1 olmalı: {N}")
    return TypicalLocations(N=N, positive=_solve_quantiles(N))


_default_repositories: Dict[str, QuantileRepositoryInterface] = {}


def default_repository() -> Optional[QuantileRepositoryInterface]:
    """QUANTILE_CACHE_DB deposu; CACHE_ENABLED=false ise None"""
    cache = get_settings().cache
    if not cache.enabled:
        return None
    if cache.quantile_db not in _default_repositories:
        _default_repositories[cache.quantile_db] = SQLiteQuantileRepository(cache.quantile_db)
    return _default_repositories[cache.quantile_db]


def typical_locations(N: int,
                      repository: Optional[QuantileRepositoryInterface] = None) -> TypicalLocations:
    """Diskteki önbellekten oku; yoksa hesapla ve kaydet

    Depo verilmezse ayarlardaki SQLite dosyası kullanılır. Disk hatası
    sonucu değiştirmez, yalnızca uyarı loglanır.
    """
    if repository is None:
        repository = default_repository()
    if repository is None:
        return gamma_quantiles(N)
    try:
        stored = repository.get(N)
    except DatabaseException as e:
        logger.warning(f"⚠️ γ önbelleği okunamadı (N={N}): {e}")
        return gamma_quantiles(N)
    if stored is not None and stored.size == N:
        logger.debug(f"γ önbellekten okundu (N={N})")
        return TypicalLocations(N=N, positive=stored)
    locations = gamma_quantiles(N)
    try:
        repository.put(N, locations.positive)
    except DatabaseException as e:
        logger.warning(f"⚠️ γ önbelleğe yazılamadı (N={N}): {e}")
    return locations


def _check_off_axis(z: Any) -> np.ndarray:
    z = np.asarray(z, dtype=complex)
    if np.any(z.imag == 0):
        raise SpectralDomainError("Im z ≠ 0 olmalı; reel z için iη ekleyin")
    return z


def sqrt_z2_minus_4(z: Any) -> Any:
    """√(z²−4) = √(z−2)·√(z+2)"""
    z = np.asarray(z, dtype=complex)
    return np.sqrt(z - 2.0) * np.sqrt(z + 2.0)


def m_sc(z: Any) -> Any:
    """m_sc(z) = (−z + √(z²−4))/2"""
    z = _check_off_axis(z)
    out = (-z + sqrt_z2_minus_4(z)) / 2.0
    return complex(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class SpectralPoint:
    """z = E + iη ve türetilen uzaklıklar"""
    z: complex

    def __post_init__(self):
        if complex(self.z).imag == 0:
            raise SpectralDomainError("SpectralPoint için η ≠ 0 olmalı")

    @property
    def E(self) -> float:
        return complex(self.z).real

    @property
    def eta(self) -> float:
        return complex(self.z).imag

    @property
    def xi(self) -> float:
        """ξ(E) = min(|E−2|, |E+2|)"""
        return min(abs(self.E - 2.0), abs(self.E + 2.0))

    @property
    def xi_z(self) -> float:
        """ξ(z) = min(|z−2|, |z+2|)"""
        return min(abs(self.z - 2.0), abs(self.z + 2.0))

    @property
    def a(self) -> float:
        """dist(z, [−2, 2])"""
        over = max(abs(self.E) - 2.0, 0.0)
        return math.hypot(over, self.eta)

    @property
    def b(self) -> float:
        """dist(z, ℝ ∖ [−2, 2])"""
        inside = max(2.0 - abs(self.E), 0.0)
        return math.hypot(inside, self.eta)


def m_sc_bounds_check(z: complex) -> Dict[str, float]:
    """|m_sc| ≤ 1 ve kenar uzaklığı karşılaştırma oranları"""
    point = SpectralPoint(z)
    m = m_sc(z)
    eta = abs(point.eta)
    scale = math.sqrt(point.xi + eta)
    if abs(point.E) <= 2.0:
        ratio = abs(m.imag) / scale
    else:
        ratio = abs(m.imag) * scale / eta
    return {
        "abs_m": abs(m),
        "self_consistency": abs(m * m + z * m + 1.0),
        "im_ratio": ratio,
    }
