"""
Ampirik Stieltjes dönüşümü, yerel yasa ve rijitlik tanılamaları
"""
from dataclasses import dataclass, field
from typing import Any, Dict, List, Tuple

import numpy as np

from ..ensembles import MatrixSample
from .limits import SpectralDomainError, TypicalLocations, m_sc
from .singular import SymmetrizedSpectrum, girko_eigenvalues


def empirical_stieltjes(spec: SymmetrizedSpectrum, z: complex) -> complex:
    """S(z) = (1/2N) Σ_k 1/(s_k − z)"""
    z = complex(z)
    values = spec.values
    if z.imag == 0:
        hit = " ve spektrumdaki bir noktaya çarpıyor" if np.any(values == z.real) else ""
        raise SpectralDomainError(f"Im z ≠ 0 olmalı: z = {z}{hit}")
    return complex(np.sum(1.0 / (values - z)) / values.size)


def local_law_check(spec: SymmetrizedSpectrum, z: complex, constant: float = 10.0) -> Dict[str, float]:
    """|S(z) − m_sc(z)| ile C/(Nη) karşılaştırması"""
    if complex(z).imag == 0:
        raise SpectralDomainError(f"Yerel yasa reel z için tanımsız: z = {z}")
    deviation = abs(empirical_stieltjes(spec, z) - m_sc(z))
    allowance = constant / (spec.N * abs(complex(z).imag))
    return {"deviation": deviation, "allowance": allowance, "passed": float(deviation <= allowance)}


def trace_local_law(A: MatrixSample, z: complex) -> Dict[str, float]:
    """Dikdörtgen A için (1/(M+N)) Tr(girko(A) − z)⁻¹ ile m_sc(z) farkı"""
    eigs = girko_eigenvalues(A)
    value = complex(np.mean(1.0 / (eigs - complex(z))))
    return {
        "trace": value,
        "m_sc": m_sc(z),
        "deviation": abs(value - m_sc(z)),
    }


def rigidity_allowance(N: int, epsilon: float) -> np.ndarray:
    """N^(−2/3+ε)·(N+1−|k|)^(−1/3), tam indeks düzeninde"""
    k = np.concatenate([np.arange(N, 0, -1), np.arange(1, N + 1)])
    return N ** (-2.0 / 3.0 + epsilon) * (N + 1.0 - k) ** (-1.0 / 3.0)


@dataclass
class RigidityReport:
    """Rijitlik ihlalleri: (k, |s_k − γ_k|, izin)"""
    epsilon: float
    violations: List[Tuple[int, float, float]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_dict(self) -> Dict[str, Any]:
        return {
            "epsilon": self.epsilon,
            "violations": [list(v) for v in self.violations],
            "pass": self.passed,
        }


def rigidity_check(spec: SymmetrizedSpectrum, gammas: TypicalLocations,
                   epsilon: float) -> RigidityReport:
    """Her k için |s_k − γ_k| ≤ N^(−2/3+ε)(N+1−|k|)^(−1/3)"""
    if spec.N != gammas.N:
        raise ValueError(f"N uyuşmuyor: spektrum {spec.N}, γ {gammas.N}")
    deviation = np.abs(spec.values - gammas.values)
    allowance = rigidity_allowance(spec.N, epsilon)
    indices = spec.indices
    bad = np.nonzero(deviation > allowance)[0]
    return RigidityReport(
        epsilon=epsilon,
        violations=[(int(indices[i]), float(deviation[i]), float(allowance[i])) for i in bad],
    )
