"""
Test fonksiyonları ve dış fonksiyon F

Geçiş bandı kuintik smoothstep S(u) = 6u⁵ − 15u⁴ + 10u³ ile kurulur:
    max S′ = 15/8, max |S″| = 10/√3
böylece ‖f′‖∞ = (15/8)/ρ ve ‖f″‖∞ = (10/√3)/ρ² kapalı formdadır.
"""
import math
from dataclasses import dataclass
from typing import Any, Dict

import numpy as np

from ..interfaces import SmoothFunctionInterface
from ..utils import DataValidator


VARIANTS = ("f1", "f2", "f-centered")
S1_MAX = 15.0 / 8.0
S2_MAX = 10.0 / math.sqrt(3.0)


class ComparisonError(ValueError):
    """Karşılaştırma aparatı parametre hataları"""
    pass


def smoothstep(u: Any) -> np.ndarray:
    u = np.clip(np.asarray(u, dtype=float), 0.0, 1.0)
    return u**3 * (10.0 - 15.0 * u + 6.0 * u**2)


def smoothstep_first(u: Any) -> np.ndarray:
    u = np.clip(np.asarray(u, dtype=float), 0.0, 1.0)
    return 30.0 * u**2 * (1.0 - u) ** 2


def smoothstep_second(u: Any) -> np.ndarray:
    u = np.asarray(u, dtype=float)
    inside = (u > 0.0) & (u < 1.0)
    uc = np.clip(u, 0.0, 1.0)
    return np.where(inside, 60.0 * uc * (1.0 - uc) * (1.0 - 2.0 * uc), 0.0)


@dataclass(frozen=True)
class TestFunctionSpec(SmoothFunctionInterface):
    """Simetrik, |x|'te artmayan, C² kesme fonksiyonu

    f1: |x| < r/N − ρ'da 1, |x| > r/N'de 0
    f2: |x| < r/N'de 1, |x| > r/N + ρ'da 0
    f-centered: |x| < E − ρ'da 1, |x| > E'de 0
    """
    __test__ = False

    r: float
    rho: float
    a: float
    N: int
    variant: str = "f1"
    center: float = 0.0

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise ComparisonError(f"variant {VARIANTS} içinden olmalı: {self.variant!r}")
        if not DataValidator.is_positive_int(self.N):
            raise ComparisonError(f"N pozitif tamsayı olmalı: {self.N}")
        if not 1.0 < self.a < 2.0:
            raise ComparisonError(f"a ∈ (1, 2) olmalı: {self.a}")
        if self.variant != "f-centered" and self.r <= 0:
            raise ComparisonError(f"r > 0 olmalı: {self.r}")
        if not DataValidator.in_range(self.rho, self.N ** (-self.a), 1.0 / self.N):
            raise ComparisonError(
                f"ρ ∈ [N^-a, N^-1] = [{self.N ** (-self.a):.3g}, {1.0 / self.N:.3g}] olmalı: {self.rho}"
            )
        if self.inner < 0:
            raise ComparisonError(f"Plato yarıçapı negatif: {self.inner:.3g}; r veya E'yi büyütün")

    @property
    def inner(self) -> float:
        """Plato yarıçapı"""
        if self.variant == "f1":
            return self.r / self.N - self.rho
        if self.variant == "f2":
            return self.r / self.N
        return self.center - self.rho

    def support_radius(self) -> float:
        return self.inner + self.rho

    def _u(self, x: Any) -> np.ndarray:
        return (np.abs(np.asarray(x, dtype=float)) - self.inner) / self.rho

    def value(self, x: Any) -> np.ndarray:
        return 1.0 - smoothstep(self._u(x))

    def first(self, x: Any) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        return -np.sign(x) * smoothstep_first(self._u(x)) / self.rho

    def second(self, x: Any) -> np.ndarray:
        return -smoothstep_second(self._u(x)) / self.rho**2

    def derivative_bounds(self) -> Dict[str, float]:
        """Kapalı form ‖f′‖∞·ρ ve ‖f″‖∞·ρ²"""
        return {"first": S1_MAX, "second": S2_MAX}

    def to_dict(self) -> Dict[str, Any]:
        return {"r": self.r, "rho": self.rho, "a": self.a, "N": self.N,
                "variant": self.variant, "center": self.center}


class OuterFunction:
    """F(x) = 1 − S(x): x ≤ 0'da 1, x ≥ 1'de 0"""

    def __call__(self, x: Any) -> Any:
        out = 1.0 - smoothstep(x)
        return float(out) if out.ndim == 0 else out


F = OuterFunction()


def eval_test_function(spec: TestFunctionSpec, x: Any) -> Any:
    out = spec.value(x)
    return float(out) if np.ndim(out) == 0 else out
