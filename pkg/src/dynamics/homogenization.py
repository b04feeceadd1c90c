"""
φ̂ yaklaşımı: φ'nin karakteristikler boyunca deterministik taşınması

φ̂_k(t) = 1/(2N Im m_sc(γ_k^t)) Σ_j Im(1/(γ_j − γ_k^t)) (σ_j(H) − σ_j(G))
γ_k^t = (γ_k + i0⁺)_t, sayısal olarak γ_k + i·GAMMA_IMAG_OFFSET.
"""
import logging
from dataclasses import dataclass
from typing import Dict, Optional

import numpy as np
import pandas as pd

from ..config import get_settings
from ..spectra import SingularSpectrum, TypicalLocations, characteristic, m_sc, symmetric_indices
from .ou import DynamicsError


logger = logging.getLogger(__name__)

MIN_IM_MSC = 1e-6
T_RANGE = (1e-3, 1.0)


@dataclass(eq=False)
class HatPhi:
    """Yığın penceresindeki φ̂ değerleri; labels artan sıralı ve simetrik"""
    labels: np.ndarray
    values: np.ndarray
    t: float
    asymmetry: float = 0.0

    def at(self, k: int) -> float:
        hit = np.nonzero(self.labels == k)[0]
        if hit.size == 0:
            raise IndexError(f"k = {k} yığın penceresinde değil")
        return float(self.values[hit[0]])

    def size_check(self, N: int, exponent: float = 0.2) -> Dict[str, float]:
        """|φ̂_k| ≤ N^{exponent}·|k|/(N²t) sağlanan indeks oranı"""
        bound = N ** exponent * np.abs(self.labels) / (N * N * self.t)
        share = float(np.mean(np.abs(self.values) <= bound))
        return {"share": share}

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({"t": self.t, "k": self.labels, "hat_phi": self.values})


def bulk_window(N: int, bulk_c: float) -> np.ndarray:
    """1 ≤ |k| ≤ (1−c)N etiketleri"""
    if not 0.0 < bulk_c <= 0.5:
        raise DynamicsError(f"bulk_c ∈ (0, 1/2] olmalı: {bulk_c}")
    K = int(np.floor((1.0 - bulk_c) * N))
    labels = symmetric_indices(N)
    return labels[np.abs(labels) <= K]


def hat_phi(sigmaH: SingularSpectrum, sigmaG: SingularSpectrum, gammas: TypicalLocations,
            t: float, bulk_c: float, offset: Optional[float] = None) -> HatPhi:
    if not T_RANGE[0] <= t <= T_RANGE[1]:
        raise DynamicsError(f"t ∈ [{T_RANGE[0]}, {T_RANGE[1]}] olmalı: {t}")
    N = sigmaH.N
    if sigmaG.N != N or gammas.N != N:
        raise DynamicsError(f"N uyuşmuyor: {sigmaH.N}, {sigmaG.N}, {gammas.N}")
    if offset is None:
        offset = get_settings().simulation.gamma_imag_offset

    labels = bulk_window(N, bulk_c)
    gamma_full = gammas.values
    diff = sigmaH.values - sigmaG.values
    diff_full = np.concatenate([-diff[::-1], diff])

    # tam düzende k etiketinin konumu
    pos = np.where(labels > 0, N + labels - 1, N + labels)
    gamma_t = characteristic(gamma_full[pos] + 1j * offset, t)
    im_m = np.imag(m_sc(gamma_t))
    if np.any(im_m < MIN_IM_MSC):
        worst = int(labels[np.argmin(im_m)])
        raise DynamicsError(f"Im m_sc(γ_k^t) < {MIN_IM_MSC} (k = {worst}); pencereyi daraltın")

    kernel = np.imag(1.0 / (gamma_full[None, :] - gamma_t[:, None]))
    raw = (kernel @ diff_full) / (2.0 * N * im_m)
    values = 0.5 * (raw - raw[::-1])
    asymmetry = float(np.max(np.abs(raw + raw[::-1]))) if raw.size else 0.0
    if asymmetry > 1e-8 * max(1.0, float(np.max(np.abs(raw)))):
        logger.warning(f"⚠️ φ̂ antisimetri sapması: {asymmetry:.2e}")
    return HatPhi(labels=labels, values=values, t=t, asymmetry=asymmetry)
