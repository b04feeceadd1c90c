"""
Tekil değerler, Girko simetrizasyonu, koşul sayısı, genişletme
"""
import logging
import math
from dataclasses import dataclass
from typing import Any, Tuple

import numpy as np
import pandas as pd
from scipy import linalg

from ..ensembles import EntryLaw, MatrixSample, RngStreamSpec, draw_entries


logger = logging.getLogger(__name__)

ZERO_FLOOR = 1e-14


class SpectrumError(ValueError):
    """Spektrum hesaplama hataları"""
    pass


@dataclass(eq=False)
class SingularSpectrum:
    """Artan sıralı tekil değerler σ₁ ≤ … ≤ σ_N"""
    values: np.ndarray
    source_dims: Tuple[int, int]

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float)
        if self.values.ndim != 1 or self.values.size == 0:
            raise SpectrumError("Tekil değer dizisi boş olmayan 1 boyutlu olmalı")
        if np.any(self.values < 0) or np.any(np.diff(self.values) < 0):
            raise SpectrumError("Tekil değerler negatif olmayan ve artan sırada olmalı")

    @property
    def N(self) -> int:
        return int(self.values.size)

    @property
    def sigma1(self) -> float:
        return float(self.values[0])

    @property
    def sigmaN(self) -> float:
        return float(self.values[-1])

    def symmetrized(self) -> "SymmetrizedSpectrum":
        return SymmetrizedSpectrum(self.values.copy())


class SymmetrizedSpectrum:
    """k ∈ {−N..−1, 1..N} indeksli s_k, s₋ₖ = −sₖ

    Yalnızca pozitif yarı saklanır; negatif yarı her erişimde aynalanır,
    böylece antisimetri yapı gereği tamdır. Dizi düzeni:
    [s₋N, …, s₋₁, s₁, …, s_N].
    """

    def __init__(self, positive: Any):
        arr = np.array(positive, dtype=float)
        if arr.ndim != 1 or arr.size == 0:
            raise SpectrumError("Pozitif yarı boş olmayan 1 boyutlu olmalı")
        if not np.all(np.isfinite(arr)):
            raise SpectrumError("Spektrum sonlu olmayan değer içeriyor")
        if arr[0] < 0 or np.any(np.diff(arr) < 0):
            raise SpectrumError("s₁ ≥ 0 ve sₖ artan olmalı")
        arr.setflags(write=False)
        self._positive = arr

    @property
    def N(self) -> int:
        return int(self._positive.size)

    @property
    def positive(self) -> np.ndarray:
        return self._positive

    @property
    def values(self) -> np.ndarray:
        return np.concatenate([-self._positive[::-1], self._positive])

    @property
    def indices(self) -> np.ndarray:
        return symmetric_indices(self.N)

    def at(self, k: int) -> float:
        if k == 0 or abs(k) > self.N:
            raise IndexError(f"Geçersiz indeks {k} (N={self.N}, 0 yok)")
        value = self._positive[abs(k) - 1]
        return float(value if k > 0 else -value)

    @classmethod
    def from_values(cls, values: Any) -> "SymmetrizedSpectrum":
        """Tam 2N diziden kur; antisimetri tam olmalı"""
        arr = np.asarray(values, dtype=float)
        if arr.size % 2:
            raise SpectrumError("Simetrize spektrum çift uzunlukta olmalı")
        N = arr.size // 2
        positive = arr[N:]
        if not np.array_equal(arr[:N], -positive[::-1]):
            raise SpectrumError("s₋ₖ = −sₖ antisimetrisi sağlanmıyor")
        return cls(positive)

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({"k": self.indices, "s_k": self.values})

    @classmethod
    def from_frame(cls, frame: pd.DataFrame) -> "SymmetrizedSpectrum":
        ordered = frame.sort_values("k")
        return cls.from_values(ordered["s_k"].to_numpy(dtype=float))


def symmetric_indices(N: int) -> np.ndarray:
    """[−N, …, −1, 1, …, N]"""
    return np.concatenate([np.arange(-N, 0), np.arange(1, N + 1)])


def _require_finite(A: MatrixSample) -> None:
    if not np.all(np.isfinite(A.entries)):
        raise SpectrumError("Matris sonlu olmayan giriş içeriyor (NaN/inf)")


def singular_values(A: MatrixSample) -> SingularSpectrum:
    """Artan sıralı tekil değerler"""
    _require_finite(A)
    sigma = np.sort(linalg.svdvals(A.entries, check_finite=False))
    return SingularSpectrum(values=np.clip(sigma, 0.0, None), source_dims=A.shape)


def girko_symmetrize(A: MatrixSample) -> np.ndarray:
    """[[0, A*], [A, 0]] blok matrisi, boyut (M+N)"""
    _require_finite(A)
    M, N = A.shape
    dtype = A.entries.dtype
    block = np.zeros((M + N, M + N), dtype=dtype)
    block[:N, N:] = A.entries.conj().T
    block[N:, :N] = A.entries
    return block


def girko_eigenvalues(A: MatrixSample) -> np.ndarray:
    return linalg.eigvalsh(girko_symmetrize(A), check_finite=False)


def is_singular(spec: SingularSpectrum) -> bool:
    return spec.sigmaN == 0.0 or spec.sigma1 <= ZERO_FLOOR * spec.sigmaN


def condition_number(spec: SingularSpectrum) -> float:
    """κ = σ_N/σ₁; σ₁ sayısal sıfırsa +inf"""
    if is_singular(spec):
        logger.warning("⚠️ σ₁ sayısal olarak sıfır, κ = +inf")
        return math.inf
    return spec.sigmaN / spec.sigma1


def augment_matrix(A: MatrixSample, law: EntryLaw, rng: RngStreamSpec) -> MatrixSample:
    """M×N matrisi, başına M−N taze sütun ekleyerek M×M yap

    Taze sütunlar A ile aynı ölçeklemeyi (1/√N) kullanır.
    """
    law.validate()
    M, N = A.shape
    if M == N:
        return A
    fresh = draw_entries(law, (M, M - N), rng) / math.sqrt(N)
    if A.is_complex and not np.iscomplexobj(fresh):
        fresh = fresh.astype(complex)
    entries = np.concatenate([fresh, A.entries], axis=1)
    return A.with_entries(entries)
