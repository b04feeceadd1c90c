"""
Adveksiyon denkleminin açık karakteristikleri

z_t = (e^{t/2}(z + √(z²−4)) + e^{−t/2}(z − √(z²−4)))/2
"""
import math
from dataclasses import dataclass
from typing import Any, Dict

import numpy as np

from .limits import SpectralDomainError, SpectralPoint, sqrt_z2_minus_4


EDGE_RADIUS = 0.1
BULK_MAX_ETA = 10.0


def characteristic(z: Any, t: float) -> Any:
    """z ↦ z_t; t = 0 için z"""
    if t < 0:
        raise ValueError(f"t ≥ 0 olmalı: {t}")
    z_arr = np.asarray(z, dtype=complex)
    root = sqrt_z2_minus_4(z_arr)
    out = (math.exp(t / 2.0) * (z_arr + root) + math.exp(-t / 2.0) * (z_arr - root)) / 2.0
    return complex(out) if out.ndim == 0 else out


@dataclass
class GeometryDiagnostics:
    """Karakteristik yer değiştirmesi ve geometrik karşılaştırma büyüklükleri"""
    regime: str
    re_shift: float
    im_shift: float
    re_reference: float
    im_reference: float

    @staticmethod
    def _ratio(value: float, reference: float) -> float:
        return abs(value) / reference if reference > 0 else math.nan

    @property
    def re_ratio(self) -> float:
        return self._ratio(self.re_shift, self.re_reference)

    @property
    def im_ratio(self) -> float:
        return self._ratio(self.im_shift, self.im_reference)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "regime": self.regime,
            "re_shift": self.re_shift,
            "im_shift": self.im_shift,
            "re_reference": self.re_reference,
            "im_reference": self.im_reference,
            "re_ratio": self.re_ratio,
            "im_ratio": self.im_ratio,
        }


def characteristic_geometry_check(z: complex, t: float) -> GeometryDiagnostics:
    """Kenar bölgesinde t·a/ξ^{1/2} + t² ve t·b/ξ^{1/2}; yığında (bulk) t"""
    z = complex(z)
    point = SpectralPoint(z)
    if point.eta <= 0:
        raise SpectralDomainError("Geometri kontrolü üst yarı düzlem ister (η > 0)")
    shift = characteristic(z, t) - z

    if min(abs(z - 2.0), abs(z + 2.0)) < EDGE_RADIUS:
        root_xi = math.sqrt(point.xi_z)
        return GeometryDiagnostics(
            regime="edge",
            re_shift=shift.real,
            im_shift=shift.imag,
            re_reference=t * point.a / root_xi + t * t,
            im_reference=t * point.b / root_xi,
        )
    if abs(point.E) < 2.0 and point.eta <= BULK_MAX_ETA:
        return GeometryDiagnostics(
            regime="bulk",
            re_shift=shift.real,
            im_shift=shift.imag,
            re_reference=t,
            im_reference=t,
        )
    raise SpectralDomainError(f"z = {z} ne kenar ne de yığın bölgesinde")
