"""
Parabolik çekirdek operatörü

c_jk = 1/(2N(s_j − s_k)²), j ≠ ±k. Operatör (Kv)_k = Σ_j c_jk (v_j − v_k)
sabitleri yok eder, simetriktir, dolayısıyla Σ_k v_k korunur.
Kısa menzil: |j − k| ≤ l etiket uzaklığındaki bağlar.
"""
import logging
import math
from typing import Any, List, Optional, Tuple, Union

import numpy as np

from ..spectra import SymmetrizedSpectrum, symmetric_indices
from .dbm import DbmTrajectory
from .ou import DynamicsError


logger = logging.getLogger(__name__)

MASS_TOLERANCE = 1e-8


class StabilityError(DynamicsError):
    """Açık Euler kararlılık sınırı aşıldı: dt·max_k Σ_j c_jk > 1"""
    pass


class MassConservationError(DynamicsError):
    """Yayıcı profilin toplam kütlesi 1'den saptı"""

    def __init__(self, message: str, profile: np.ndarray):
        super().__init__(message)
        self.profile = profile


def _positive_half(snapshot: Any) -> np.ndarray:
    if isinstance(snapshot, SymmetrizedSpectrum):
        return snapshot.positive
    return np.asarray(snapshot, dtype=float)


def kernel_coefficients(positive: np.ndarray) -> np.ndarray:
    """2N×2N c_jk matrisi (köşegen ve ayna konumları sıfır)"""
    positive = np.asarray(positive, dtype=float)
    N = positive.size
    full = np.concatenate([-positive[::-1], positive])
    diff = full[:, None] - full[None, :]
    with np.errstate(divide="ignore"):
        c = 1.0 / (2.0 * N * diff * diff)
    idx = np.arange(2 * N)
    c[idx, idx] = 0.0
    c[idx, 2 * N - 1 - idx] = 0.0
    return c


class KernelOperator:
    """Bir spektrum anlık görüntüsünden kurulan simetrik Markov üreteci"""

    def __init__(self, coefficients: np.ndarray, cutoff: Optional[int] = None):
        coefficients = np.asarray(coefficients, dtype=float)
        n = coefficients.shape[0]
        if coefficients.shape != (n, n) or n % 2:
            raise DynamicsError(f"Katsayı matrisi 2N×2N olmalı: {coefficients.shape}")
        if not np.all(np.isfinite(coefficients)):
            raise DynamicsError("Çakışan spektrum: sonsuz çekirdek katsayısı")
        self.coefficients = coefficients
        self.cutoff = cutoff

    @classmethod
    def from_spectrum(cls, spectrum: Union[SymmetrizedSpectrum, np.ndarray],
                      cutoff: Optional[int] = None) -> "KernelOperator":
        c = kernel_coefficients(_positive_half(spectrum))
        if cutoff is not None:
            c = c * cls._label_mask(c.shape[0] // 2, cutoff)
        return cls(c, cutoff=cutoff)

    @staticmethod
    def _label_mask(N: int, cutoff: int) -> np.ndarray:
        labels = symmetric_indices(N)
        return np.abs(labels[:, None] - labels[None, :]) <= cutoff

    @property
    def N(self) -> int:
        return self.coefficients.shape[0] // 2

    def row_sums(self) -> np.ndarray:
        return self.coefficients.sum(axis=1)

    def max_rate(self) -> float:
        return float(np.max(self.row_sums())) if self.coefficients.size else 0.0

    def apply(self, v: np.ndarray) -> np.ndarray:
        v = np.asarray(v, dtype=float)
        if v.shape[0] != self.coefficients.shape[0]:
            raise DynamicsError(f"Vektör uzunluğu 2N = {self.coefficients.shape[0]} olmalı")
        return self.coefficients @ v - self.row_sums() * v

    def generator_matrix(self) -> np.ndarray:
        return self.coefficients - np.diag(self.row_sums())

    def stable_step(self) -> float:
        """Pozitiflik koruyan en büyük açık Euler adımı"""
        rate = self.max_rate()
        return math.inf if rate == 0 else 1.0 / rate

    def __add__(self, other: "KernelOperator") -> "KernelOperator":
        return KernelOperator(self.coefficients + other.coefficients)


def split_kernel(K: KernelOperator, l: int) -> Tuple[KernelOperator, KernelOperator]:
    """K = K_short + K_long, |j − k| ≤ l etiket uzaklığına göre"""
    if l < 1:
        raise DynamicsError(f"Kısa menzil kesmesi l ≥ 1 olmalı: {l}")
    mask = KernelOperator._label_mask(K.N, l)
    short = np.where(mask, K.coefficients, 0.0)
    long_ = K.coefficients - short
    return KernelOperator(short, cutoff=l), KernelOperator(long_)


def _frames(trajectory: Any, dt: float) -> Tuple[np.ndarray, List[np.ndarray]]:
    if isinstance(trajectory, DbmTrajectory):
        return trajectory.times, [trajectory.positions[i] for i in range(len(trajectory))]
    snapshots = [_positive_half(s) for s in trajectory]
    return dt * np.arange(len(snapshots)), snapshots


def integrate_along(initial: np.ndarray, trajectory: Any, dt: float,
                    t_from: Optional[float] = None, t_to: Optional[float] = None,
                    cutoff: Optional[int] = None) -> np.ndarray:
    """dv/dt = K(t)v'yi donmuş katsayılarla açık Euler ile entegre et

    Her anlık görüntünün katsayıları bir sonraki anlık görüntüye kadar
    sabit tutulur. Liste girdisi için görüntüler dt aralıklıdır.
    """
    if dt <= 0:
        raise DynamicsError(f"dt pozitif olmalı: {dt}")
    times, frames = _frames(trajectory, dt)
    vec = np.array(initial, dtype=float)
    if len(frames) and vec.size != 2 * frames[0].size:
        raise DynamicsError(f"Başlangıç vektörü 2N = {2 * frames[0].size} uzunlukta olmalı")
    lo = times[0] if t_from is None else t_from
    hi = times[-1] if t_to is None else t_to
    if np.any(np.diff(times) < 0):
        raise DynamicsError("Anlık görüntüler zamanca sıralı olmalı")

    for i in range(len(frames) - 1):
        a, b = max(times[i], lo), min(times[i + 1], hi)
        if b <= a:
            continue
        K = KernelOperator.from_spectrum(frames[i], cutoff=cutoff)
        n_sub = max(1, int(math.ceil((b - a) / dt - 1e-9)))
        h = (b - a) / n_sub
        if h * K.max_rate() > 1.0:
            raise StabilityError(
                f"dt = {h:.3g} kararlılık sınırını aşıyor "
                f"(1/max Σc = {K.stable_step():.3g}, t = {a:.4g})"
            )
        for _ in range(n_sub):
            vec = vec + h * K.apply(vec)
    return vec


def short_range_propagator(trajectory: DbmTrajectory, l: int, u: float, v: float, k: int,
                           dt: Optional[float] = None) -> np.ndarray:
    """T_short(u, v)δ_k; dt verilmezse her aralık için kararlı adım seçilir"""
    if l < 1:
        raise DynamicsError(f"Kısa menzil kesmesi l ≥ 1 olmalı: {l}")
    if v < u or v > 1.0:
        raise DynamicsError(f"u ≤ v ≤ 1 olmalı: u = {u}, v = {v}")
    N = trajectory.N
    if l < N * (v - u):
        raise DynamicsError(f"l ≥ N(v − u) gerekli: l = {l}, N(v−u) = {N * (v - u):.3g}")
    labels = symmetric_indices(N)
    if k == 0 or abs(k) > N:
        raise DynamicsError(f"Geçersiz birim indeks {k}")
    delta = (labels == k).astype(float)
    if u == v:
        return delta

    if dt is None:
        rates = [KernelOperator.from_spectrum(trajectory.positions[i], cutoff=l).max_rate()
                 for i in range(len(trajectory) - 1)
                 if trajectory.times[i + 1] > u and trajectory.times[i] < v]
        step = 0.5 / max(max(rates, default=0.0), 1e-300)
        dt = min(step, v - u)
    out = integrate_along(delta, trajectory, dt, t_from=u, t_to=v, cutoff=l)

    mass = float(out.sum())
    if abs(mass - 1.0) > MASS_TOLERANCE:
        raise MassConservationError(
            f"Kütle korunumu bozuldu: Σ = {mass:.12g} (tolerans {MASS_TOLERANCE:g}); dt küçültün",
            profile=out,
        )
    logger.debug(f"Yayıcı k = {k}: kütle sapması {mass - 1.0:.2e}")
    return out


def mass_outside(profile: np.ndarray, k: int, radius: int) -> float:
    """|j − k| > radius etiketlerindeki toplam kütle"""
    N = profile.size // 2
    labels = symmetric_indices(N)
    return float(np.sum(profile[np.abs(labels - k) > radius]))

