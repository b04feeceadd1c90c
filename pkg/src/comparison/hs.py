"""
Helffer–Sjöstrand iz hesabı

Tr f(H̃) = (1/2π) ∫∫ g(z) Tr(H̃ − z)⁻¹ d²z,
g(z) = iy f″(x)χ(y) + i(f(x) + iy f′(x))χ′(y), z = x + iy.
g(x̄)R(x̄) = conj(g R) olduğundan yalnızca y > 0 yarısı toplanır:
Tr f = (1/π) Re ∫∫_{y>0} g R.
χ(y) = 1 − S((|y| − N^-a)/N^-a), |y| < N^-a'da 1, |y| > 2N^-a'da 0.
"""
import logging
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..config import get_settings
from ..ensembles import MatrixSample
from ..spectra import girko_eigenvalues
from .cutoffs import ComparisonError, TestFunctionSpec, smoothstep, smoothstep_first


logger = logging.getLogger(__name__)

DEFAULT_REFINEMENT = 64
RESOLUTION_LIMIT = 10


class HsResolutionError(ComparisonError):
    """Kareleme ızgarası ρ/10'dan kaba"""
    pass


@dataclass(frozen=True)
class HsIntegrand:
    spec: TestFunctionSpec

    @property
    def scale(self) -> float:
        """N^-a"""
        return self.spec.N ** (-self.spec.a)

    def chi(self, y: np.ndarray) -> np.ndarray:
        return 1.0 - smoothstep((np.abs(y) - self.scale) / self.scale)

    def chi_prime(self, y: np.ndarray) -> np.ndarray:
        return -np.sign(y) * smoothstep_first((np.abs(y) - self.scale) / self.scale) / self.scale

    def g(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        """x ve y yayınlanabilir (broadcast) diziler"""
        f = self.spec.value(x)
        f1 = self.spec.first(x)
        f2 = self.spec.second(x)
        chi = self.chi(y)
        dchi = self.chi_prime(y)
        return 1j * y * f2 * chi + 1j * (f + 1j * y * f1) * dchi


@dataclass(frozen=True)
class HsGrid:
    dx: float
    dy: float
    y_floor: float = 1e-8

    @classmethod
    def for_spec(cls, spec: TestFunctionSpec, refinement: int = DEFAULT_REFINEMENT) -> "HsGrid":
        step = min(spec.rho, spec.N ** (-spec.a)) / refinement
        return cls(dx=step, dy=step, y_floor=get_settings().simulation.hs_y_floor)

    def refined(self) -> "HsGrid":
        return HsGrid(dx=self.dx / 2.0, dy=self.dy / 2.0, y_floor=self.y_floor)


def _check_resolution(spec: TestFunctionSpec, grid: HsGrid) -> None:
    limit = min(spec.rho, spec.N ** (-spec.a)) / RESOLUTION_LIMIT
    if grid.dx > limit or grid.dy > limit:
        suggestion = limit / 2.0
        raise HsResolutionError(
            f"Izgara çok kaba (dx = {grid.dx:.3g}, dy = {grid.dy:.3g} > {limit:.3g}); "
            f"öneri: HsGrid(dx={suggestion:.3g}, dy={suggestion:.3g})"
        )


def hs_trace_from_eigenvalues(spec: TestFunctionSpec, eigenvalues: np.ndarray,
                              grid: Optional[HsGrid] = None) -> float:
    grid = grid or HsGrid.for_spec(spec)
    _check_resolution(spec, grid)
    integrand = HsIntegrand(spec)

    X = spec.support_radius()
    if X <= 0:
        return 0.0
    nx = max(1, int(math.ceil(2.0 * X / grid.dx)))
    dx = 2.0 * X / nx
    x = -X + (np.arange(nx) + 0.5) * dx

    y_top = 2.0 * integrand.scale
    ny = max(1, int(math.ceil((y_top - grid.y_floor) / grid.dy)))
    dy = (y_top - grid.y_floor) / ny
    y = grid.y_floor + (np.arange(ny) + 0.5) * dy

    g = integrand.g(x[None, :], y[:, None])
    z = x[None, :] + 1j * y[:, None]
    resolvent = np.zeros_like(z)
    for lam in np.asarray(eigenvalues, dtype=float):
        resolvent += 1.0 / (lam - z)

    total = float(np.real(np.sum(g * resolvent))) * dx * dy / math.pi
    logger.debug(f"HS ızgarası {nx}×{ny}, Tr f ≈ {total:.6g}")
    return total


def hs_trace(spec: TestFunctionSpec, H: MatrixSample, grid: Optional[HsGrid] = None) -> float:
    """Girko özdeğerleri üzerinden Tr f(H̃)"""
    return hs_trace_from_eigenvalues(spec, girko_eigenvalues(H), grid)
