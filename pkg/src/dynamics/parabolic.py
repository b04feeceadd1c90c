"""
Birleşik interpolasyon akışı (φ, ψ) ve ağırlıklı Stieltjes dönüşümleri

s⁽ᵛ⁾(0) = (1−ν)σ(H) + νσ(G) başlangıçlı DBM için
    φ_k(t) = e^{t/2} d s_k⁽ᵛ⁾(t)/dν
parabolik denklemi sağlar:
    dφ_k/dt = (1/2N) Σ_{ℓ≠±k} (φ_ℓ − φ_k)/(s_ℓ − s_k)²
ψ aynı denklemi |φ(0)| başlangıç verisiyle çözer.

φ iki yoldan hesaplanır: ν'de sonlu fark (ortak gürültülü iki yörünge)
ve donmuş yörünge boyunca evolve_phi. Farkları tanılama olarak saklanır.
"""
import logging
import math
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence

import numpy as np
import pandas as pd
from scipy import integrate

from ..config import get_settings
from ..ensembles import MatrixSample
from ..spectra import (
    SymmetrizedSpectrum,
    characteristic,
    rho_sc,
    singular_values,
    symmetric_indices,
)
from .dbm import DbmTrajectory, run_batch
from .kernel import integrate_along
from .ou import DynamicsError


logger = logging.getLogger(__name__)


def _antisymmetric(positive: np.ndarray) -> np.ndarray:
    positive = np.asarray(positive, dtype=float)
    return np.concatenate([-positive[::-1], positive])


def evolve_phi(initial: Any, trajectory: Any, dt: float) -> np.ndarray:
    """φ'yi anlık görüntü dizisi boyunca açık Euler ile ilerlet

    trajectory bir DbmTrajectory ya da dt aralıklı SymmetrizedSpectrum
    listesi olabilir. Σ_k φ_k korunur; max|φ| büyümez.
    """
    return integrate_along(initial, trajectory, dt)


@dataclass(eq=False)
class CouplingState:
    """t anında s⁽ᵛ⁾, φ ve ψ (tam 2N düzeninde)"""
    nu: float
    s: SymmetrizedSpectrum
    phi: np.ndarray
    psi: np.ndarray
    t: float
    phi_fd: Optional[np.ndarray] = None

    @property
    def discrepancy(self) -> float:
        """max_k |φ_k − φ_k^{fd}|"""
        if self.phi_fd is None:
            return math.nan
        return float(np.max(np.abs(self.phi - self.phi_fd)))

    def invariant_violations(self, psi0_max: float, tol: float = 1e-8) -> Dict[str, bool]:
        return {
            "psi_nonnegative": bool(np.all(self.psi >= -tol)),
            "psi_symmetric": bool(np.allclose(self.psi, self.psi[::-1], atol=tol)),
            "phi_dominated": bool(np.all(np.abs(self.phi) <= self.psi + tol)),
            "psi_max_contracts": bool(np.max(self.psi) <= psi0_max + tol),
        }


@dataclass(eq=False)
class CouplingRun:
    nu: float
    states: List[CouplingState]
    trajectory: DbmTrajectory
    fd_step: float

    def state_at(self, t: float) -> CouplingState:
        for state in self.states:
            if abs(state.t - t) <= 1e-9:
                return state
        raise DynamicsError(f"t = {t} ızgarada yok")

    def discrepancy(self) -> float:
        values = [s.discrepancy for s in self.states if s.phi_fd is not None]
        return max(values) if values else math.nan

    def to_frame(self) -> pd.DataFrame:
        """(t, k, phi_k, psi_k) satırları"""
        frames = []
        for state in self.states:
            k = symmetric_indices(state.s.N)
            frames.append(pd.DataFrame({"t": state.t, "k": k, "phi_k": state.phi, "psi_k": state.psi}))
        return pd.concat(frames, ignore_index=True)


def coupling_run(H: MatrixSample, G: MatrixSample, nu: float, t_grid: Sequence[float],
                 dt: float, rng: Any, fd_step: Optional[float] = None) -> CouplingRun:
    """ν ve ν ± Δν yörüngelerini ortak gürültüyle sür, φ ve ψ'yi ızgarada kaydet"""
    if not 0.0 <= nu <= 1.0:
        raise DynamicsError(f"ν ∈ [0, 1] olmalı: {nu}")
    if H.shape != G.shape or H.M != H.N:
        raise DynamicsError(f"Kare ve aynı boyutlu girdiler gerekli: {H.shape}, {G.shape}")
    step = get_settings().simulation.fd_step if fd_step is None else fd_step
    sign = 1.0 if nu + step <= 1.0 else -1.0
    nu2 = nu + sign * step

    sH = singular_values(H).values
    sG = singular_values(G).values
    pos0 = np.stack([(1 - nu) * sH + nu * sG, (1 - nu2) * sH + nu2 * sG])
    times, frames, grid = run_batch(pos0, t_grid, dt, rng, record="substeps")
    trajectory = DbmTrajectory(times=times, positions=frames[:, 0, :], grid_times=grid)

    phi = _antisymmetric(sG - sH)
    psi = np.abs(phi)
    states: List[CouplingState] = []
    previous = 0.0
    for t in grid:
        if t > previous:
            phi = integrate_along(phi, trajectory, dt, t_from=previous, t_to=t)
            psi = integrate_along(psi, trajectory, dt, t_from=previous, t_to=t)
        i = int(np.argmin(np.abs(times - t)))
        fd = math.exp(t / 2.0) * sign * (frames[i, 1] - frames[i, 0]) / step
        states.append(CouplingState(nu=nu, s=SymmetrizedSpectrum(frames[i, 0]), phi=phi.copy(),
                                    psi=psi.copy(), t=t, phi_fd=_antisymmetric(fd)))
        previous = t

    run = CouplingRun(nu=nu, states=states, trajectory=trajectory, fd_step=step)
    logger.debug(f"Birleşik akış: ν = {nu}, N = {H.N}, φ farkı = {run.discrepancy():.3g}")
    return run


@dataclass(frozen=True)
class WeightedStieltjesSample:
    z: complex
    value_phi: complex
    value_psi: complex
    t: float


def weighted_stieltjes(state: CouplingState, z: complex) -> WeightedStieltjesSample:
    """𝔖_t(z) = e^{−t/2} Σ_k φ_k/(s_k − z), 𝔖̃_t aynı şekilde ψ ile"""
    z = complex(z)
    if z.imag == 0:
        raise DynamicsError("Im z ≠ 0 olmalı")
    weights = 1.0 / (state.s.values - z)
    scale = math.exp(-state.t / 2.0)
    return WeightedStieltjesSample(
        z=z,
        value_phi=complex(scale * np.sum(state.phi * weights)),
        value_psi=complex(scale * np.sum(state.psi * weights)),
        t=state.t,
    )


def advection_transport_check(run: CouplingRun, z: complex, t: float) -> float:
    """|𝔖̃_t(z) − 𝔖̃_0(z_t)|"""
    z = complex(z)
    N = run.trajectory.N
    if abs(z.real) >= 2.0 or z.imag < 10.0 / N:
        raise DynamicsError(f"z yığın içinde ve η ≥ 10/N olmalı: z = {z}, N = {N}")
    if not 0.0 <= t <= 1.0:
        raise DynamicsError(f"0 ≤ t ≤ 1 olmalı: {t}")
    now = weighted_stieltjes(run.state_at(t), z).value_psi
    start = weighted_stieltjes(run.state_at(0.0), characteristic(z, t)).value_psi
    return abs(now - start)


def _semicircle_transform(w: complex) -> complex:
    """∫ ρ_sc(x)/(x − w) dx, kareleme ile"""
    re = integrate.quad(lambda x: rho_sc(x) * (1.0 / (x - w)).real, -2.0, 2.0, limit=200)[0]
    im = integrate.quad(lambda x: rho_sc(x) * (1.0 / (x - w)).imag, -2.0, 2.0, limit=200)[0]
    return complex(re, im)


def deterministic_transport_residual(z: complex, t: float) -> float:
    """Sabit ağırlıklı profilin taşınma kalıntısı: |e^{−t/2} m(z) − m(z_t)|

    Denge yoğunluğunda sabit ağırlık sabit kalır; fark yalnızca kareleme
    hatasıdır.
    """
    z = complex(z)
    if z.imag <= 0:
        raise DynamicsError("Im z > 0 olmalı")
    return abs(math.exp(-t / 2.0) * _semicircle_transform(z)
               - _semicircle_transform(characteristic(z, t)))


def rough_decay_check(state: CouplingState, exponent: float = 0.3,
                      fraction: float = 0.95) -> Dict[str, float]:
    """N|φ_k(t)|·max(((N+1−|k|)/N)^{1/3}, t) ≤ N^{exponent} oranı"""
    N = state.s.N
    k = np.abs(symmetric_indices(N))
    weight = np.maximum(((N + 1 - k) / N) ** (1.0 / 3.0), state.t)
    scaled = N * np.abs(state.phi) * weight
    share = float(np.mean(scaled <= N ** exponent))
    return {"share": share, "bound": N ** exponent, "passed": float(share >= fraction)}


def apriori_curve(N: int, E: float, eps: float = 0.1) -> complex:
    """η = N^{−1+4ε} ξ(E)^{−1/2} eğrisindeki nokta"""
    xi = min(abs(E - 2.0), abs(E + 2.0))
    if xi <= 0:
        raise DynamicsError("E kenarda olamaz")
    return complex(E, N ** (-1.0 + 4.0 * eps) / math.sqrt(xi))


def apriori_bound_check(state: CouplingState, E: float, eps: float = 0.1) -> Dict[str, float]:
    """Im 𝔖̃_t ≤ N^{3ε} ξ^{1/2}/max(ξ^{1/2}, t) eğri üzerinde"""
    N = state.s.N
    z = apriori_curve(N, E, eps)
    xi = min(abs(E - 2.0), abs(E + 2.0))
    value = weighted_stieltjes(state, z).value_psi.imag
    allowance = N ** (3.0 * eps) * math.sqrt(xi) / max(math.sqrt(xi), state.t)
    return {"value": value, "allowance": allowance, "passed": float(value <= allowance)}
