"""
Matris değerli Ornstein–Uhlenbeck akışı

Kapalı form: H_t = e^{−t/2} H + √(1 − e^{−t}) G
SDE:         dH = N^{−1/2} dB − ½ H dt
"""
import logging
import math
from typing import Any

import numpy as np

from ..ensembles import MatrixSample, as_generator


logger = logging.getLogger(__name__)

MAX_HORIZON = 10.0
MAX_SDE_DT = 1e-2


class DynamicsError(ValueError):
    """Dinamik simülasyon hataları"""
    pass


def _require_same_shape(H: MatrixSample, G: MatrixSample) -> None:
    if H.shape != G.shape:
        raise DynamicsError(f"Boyut uyuşmazlığı: {H.shape} vs {G.shape}")


def ou_interpolate(H: MatrixSample, G: MatrixSample, t: float) -> MatrixSample:
    """H_t = e^{−t/2}H + √(1−e^{−t})G"""
    _require_same_shape(H, G)
    if t < 0:
        raise DynamicsError(f"t ≥ 0 olmalı: {t}")
    if t == 0:
        return H
    entries = math.exp(-t / 2.0) * H.entries + math.sqrt(-math.expm1(-t)) * G.entries
    return H.with_entries(entries)


def lambda_to_time(lam: float) -> float:
    """H + λG = √(1+λ²)·H_{log(1+λ²)}"""
    return math.log1p(lam * lam)


def smoothed_matrix(H: MatrixSample, G: MatrixSample, lam: float) -> MatrixSample:
    _require_same_shape(H, G)
    return H.with_entries(H.entries + lam * G.entries)


def ou_sde_path(H0: MatrixSample, dt: float, steps: int, rng: Any,
                noise: bool = True) -> MatrixSample:
    """Euler–Maruyama ile dH = N^{−1/2}dB − ½H dt; T = dt·steps sonundaki matris"""
    if dt <= 0 or dt > MAX_SDE_DT:
        raise DynamicsError(f"0 < dt ≤ {MAX_SDE_DT} olmalı: {dt}")
    if steps < 0 or dt * steps > MAX_HORIZON + 1e-12:
        raise DynamicsError(f"dt·steps ≤ {MAX_HORIZON} olmalı: {dt * steps}")

    gen = as_generator(rng)
    H = np.array(H0.entries, copy=True)
    scale = math.sqrt(dt / H0.N)
    complex_noise = np.iscomplexobj(H)
    decay = 1.0 - 0.5 * dt

    for _ in range(steps):
        H *= decay
        if noise:
            if complex_noise:
                H += scale * (gen.standard_normal(H.shape)
                              + 1j * gen.standard_normal(H.shape)) / math.sqrt(2.0)
            else:
                H += scale * gen.standard_normal(H.shape)

    logger.debug(f"OU yolu tamamlandı: T = {dt * steps:g}, N = {H0.N}")
    return H0.with_entries(H)
