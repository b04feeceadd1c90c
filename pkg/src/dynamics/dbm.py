"""
Simetrize tekil değer Dyson Brown hareketi (DBM)

k ≥ 1 için:
    ds_k = dB_k/√N + [−s_k/2 + (1/2N) Σ_{ℓ≠±k} 1/(s_k − s_ℓ)] dt
ve s₋ₖ = −sₖ, B₋ₖ = −Bₖ. Yalnızca pozitif yarı entegre edilir; negatif
yarı aynalanır.

Entegratör: Euler–Maruyama, adım sınırı
    dt ≤ min(dt_max, guard·min_k(s_{k+1} − s_k)²·N).
Sıralamayı bozan adım reddedilir ve Brown köprüsü ile ikiye bölünür
(sürücü yol değişmez). (1, −1) çifti birbiriyle etkileşmez; reel
matrislerde s₁ sıfırı geçerse |s₁| olarak yansıtılır.
Birlikte (coupled) ilerletilen yörüngeler aynı alt adımları ve aynı
artışları kullanır.
"""
import logging
import math
from dataclasses import dataclass, field
from typing import Any, Callable, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from ..config import get_settings
from ..ensembles import MatrixSample, RngStreamSpec, as_generator
from ..spectra import SingularSpectrum, SymmetrizedSpectrum, singular_values, symmetric_indices
from .ou import DynamicsError


logger = logging.getLogger(__name__)

RECORD_MODES = ("grid", "steps", "substeps")


class DbmStepError(DynamicsError):
    """Adım reddi sınırına ulaşıldı: daha küçük dt gerekli"""
    pass


@dataclass(eq=False)
class DbmState:
    """Zaman damgalı simetrize spektrum"""
    spectrum: SymmetrizedSpectrum
    t: float = 0.0
    dt_used: float = 0.0
    step: int = 0


@dataclass(eq=False)
class DbmTrajectory:
    """Anlık görüntüler: times (n,), positions (n, N) pozitif yarılar"""
    times: np.ndarray
    positions: np.ndarray
    grid_times: Tuple[float, ...] = field(default=())

    def __len__(self) -> int:
        return int(self.times.size)

    @property
    def N(self) -> int:
        return int(self.positions.shape[1])

    def spectrum(self, i: int) -> SymmetrizedSpectrum:
        return SymmetrizedSpectrum(self.positions[i])

    def snapshots(self) -> List[SymmetrizedSpectrum]:
        return [self.spectrum(i) for i in range(len(self))]

    def index_at(self, t: float) -> int:
        i = int(np.argmin(np.abs(self.times - t)))
        if abs(self.times[i] - t) > 1e-9:
            raise DynamicsError(f"t = {t} için anlık görüntü yok")
        return i

    def at(self, t: float) -> SymmetrizedSpectrum:
        return self.spectrum(self.index_at(t))

    def to_frame(self) -> pd.DataFrame:
        """(t, k, s_k) satırları"""
        k = symmetric_indices(self.N)
        full = np.concatenate([-self.positions[:, ::-1], self.positions], axis=1)
        return pd.DataFrame({
            "t": np.repeat(self.times, k.size),
            "k": np.tile(k, len(self)),
            "s_k": full.ravel(),
        })


def _interaction(pos: np.ndarray) -> np.ndarray:
    """(1/2N) Σ_{ℓ≠±k} 1/(s_k − s_ℓ), pos şekli (K, N)"""
    _, N = pos.shape
    full = np.concatenate([-pos[:, ::-1], pos], axis=1)
    diff = pos[:, :, None] - full[:, None, :]
    idx = np.arange(N)
    diff[:, idx, N + idx] = np.inf
    diff[:, idx, N - 1 - idx] = np.inf
    with np.errstate(divide="ignore", invalid="ignore"):
        inv = 1.0 / diff
    return inv.sum(axis=2) / (2.0 * N)


class _BatchIntegrator:
    """K yörüngeyi ortak alt adımlarla ilerleten Euler–Maruyama çekirdeği"""

    def __init__(self, N: int, gen: np.random.Generator, noise: bool = True,
                 reflect: bool = True,
                 recorder: Optional[Callable[[float, np.ndarray], None]] = None):
        sim = get_settings().simulation
        self.N = N
        self.gen = gen
        self.noise = noise
        self.reflect = reflect
        self.recorder = recorder
        self.dt_max = sim.dt_max
        self.guard_factor = sim.guard_factor
        self.max_halvings = sim.max_halvings
        self.dt_used = 0.0
        self.rejections = 0

    def guard(self, pos: np.ndarray) -> float:
        if self.N < 2:
            return math.inf
        gap = float(np.min(np.diff(pos, axis=1)))
        return self.guard_factor * gap * gap * self.N

    @staticmethod
    def _ordered(pos: np.ndarray) -> bool:
        return bool(np.all(np.isfinite(pos)) and np.all(np.diff(pos, axis=1) > 0)
                    and np.all(pos[:, 0] >= 0))

    def advance(self, pos: np.ndarray, dt: float, t0: float) -> np.ndarray:
        if self.noise:
            dW = math.sqrt(dt) * self.gen.standard_normal(self.N)
        else:
            dW = np.zeros(self.N)
        return self._advance(pos, dt, dW, t0, 0)

    def _advance(self, pos: np.ndarray, dt: float, dW: np.ndarray, t0: float,
                 depth: int) -> np.ndarray:
        limit = min(self.dt_max, self.guard(pos))
        if dt <= limit * (1.0 + 1e-12):
            proposal = pos + dt * (-0.5 * pos + _interaction(pos))
            if self.noise:
                proposal = proposal + dW[None, :] / math.sqrt(self.N)
            if self.reflect:
                proposal[:, 0] = np.abs(proposal[:, 0])
            if self._ordered(proposal):
                self.dt_used = dt
                if self.recorder is not None:
                    self.recorder(t0 + dt, proposal)
                return proposal
            self.rejections += 1

        if depth >= self.max_halvings:
            raise DbmStepError(
                f"{self.max_halvings} yarılamadan sonra sıralama korunamadı "
                f"(t = {t0:.6g}, dt = {dt:.3g}); daha küçük dt deneyin"
            )
        half = 0.5 * dt
        if self.noise:
            # Brown köprüsü: W(dt/2) | W(dt) = dW
            mid = 0.5 * dW + math.sqrt(0.25 * dt) * self.gen.standard_normal(self.N)
        else:
            mid = 0.5 * dW
        first = self._advance(pos, half, mid, t0, depth + 1)
        return self._advance(first, half, dW - mid, t0 + half, depth + 1)


def _initial_positive(initial: Any) -> np.ndarray:
    if isinstance(initial, SymmetrizedSpectrum):
        return np.array(initial.positive, dtype=float)
    if isinstance(initial, SingularSpectrum):
        return np.array(initial.values, dtype=float)
    if isinstance(initial, DbmState):
        return np.array(initial.spectrum.positive, dtype=float)
    return np.array(SymmetrizedSpectrum(initial).positive, dtype=float)


def _normalize_grid(t_grid: Sequence[float]) -> List[float]:
    grid = sorted({float(t) for t in t_grid} | {0.0})
    if grid[0] < 0:
        raise DynamicsError("Zaman ızgarası negatif olamaz")
    return grid


def run_batch(pos0: np.ndarray, t_grid: Sequence[float], dt: float, rng: Any,
              noise: bool = True, record: str = "steps",
              reflect: bool = True) -> Tuple[np.ndarray, np.ndarray, Tuple[float, ...]]:
    """K yörüngeyi ortak gürültüyle ilerlet; (times, positions (n,K,N), grid)"""
    if record not in RECORD_MODES:
        raise DynamicsError(f"record {RECORD_MODES} içinden olmalı: {record!r}")
    if dt <= 0:
        raise DynamicsError(f"dt pozitif olmalı: {dt}")
    pos = np.array(pos0, dtype=float, ndmin=2)
    grid = _normalize_grid(t_grid)
    gen = as_generator(rng)

    times: List[float] = [0.0]
    frames: List[np.ndarray] = [pos.copy()]

    def recorder(t: float, value: np.ndarray) -> None:
        times.append(t)
        frames.append(value.copy())

    integ = _BatchIntegrator(pos.shape[1], gen, noise=noise, reflect=reflect,
                             recorder=recorder if record == "substeps" else None)
    t = 0.0
    for target in grid[1:]:
        span = target - t
        n_steps = max(1, int(math.ceil(span / dt - 1e-9)))
        h = span / n_steps
        for _ in range(n_steps):
            pos = integ.advance(pos, h, t)
            t += h
            if record == "steps":
                times.append(t)
                frames.append(pos.copy())
        t = target
        if record == "grid":
            times.append(t)
            frames.append(pos.copy())
        else:
            times[-1] = t

    if integ.rejections:
        logger.debug(f"DBM: {integ.rejections} adım reddedildi ve bölündü")
    return np.asarray(times), np.stack(frames), tuple(grid)


def dbm_step(state: DbmState, dt: float, rng: Any, noise: bool = True) -> DbmState:
    """Tek Euler–Maruyama adımı (gerekirse iç alt adımlarla)

    RngStreamSpec verilirse n. adımın gürültüsü `rng.child(n)` akışından
    gelir; aynı spec ile ardışık çağrılar bağımsız artışlar üretir. Generator
    verilirse olduğu gibi tüketilir.
    """
    if dt <= 0:
        raise DynamicsError(f"dt pozitif olmalı: {dt}")
    pos = state.spectrum.positive[None, :].astype(float)
    step = state.step + 1
    gen = rng.child(step).generator() if isinstance(rng, RngStreamSpec) else as_generator(rng)
    integ = _BatchIntegrator(pos.shape[1], gen, noise=noise)
    new = integ.advance(pos, dt, state.t)
    return DbmState(spectrum=SymmetrizedSpectrum(new[0]), t=state.t + dt, dt_used=integ.dt_used,
                    step=step)


def run_dbm(initial: Any, t_grid: Sequence[float], dt: float, rng: Any,
            noise: bool = True, record: str = "steps") -> DbmTrajectory:
    """Tek yörünge; t_grid'deki zamanlar her zaman kaydedilir"""
    times, frames, grid = run_batch(_initial_positive(initial)[None, :], t_grid, dt, rng,
                                    noise=noise, record=record)
    return DbmTrajectory(times=times, positions=frames[:, 0, :], grid_times=grid)


@dataclass(eq=False)
class CoupledRun:
    """Aynı Brown artışlarıyla sürülen σ(H,t) ve σ(G,t)"""
    times: np.ndarray
    sigma_H: np.ndarray
    sigma_G: np.ndarray

    @property
    def gap(self) -> np.ndarray:
        return self.sigma_H - self.sigma_G

    def max_gap(self) -> np.ndarray:
        """Her zaman için max_k |σ_k(H,t) − σ_k(G,t)|"""
        return np.max(np.abs(self.gap), axis=1)

    def index_at(self, t: float) -> int:
        i = int(np.argmin(np.abs(self.times - t)))
        if abs(self.times[i] - t) > 1e-9:
            raise DynamicsError(f"t = {t} için kayıt yok")
        return i

    def pair_at(self, t: float) -> Tuple[np.ndarray, np.ndarray]:
        i = self.index_at(t)
        return self.sigma_H[i], self.sigma_G[i]

    def to_frame(self) -> pd.DataFrame:
        N = self.sigma_H.shape[1]
        k = np.arange(1, N + 1)
        return pd.DataFrame({
            "t": np.repeat(self.times, N),
            "k": np.tile(k, self.times.size),
            "sigma_H": self.sigma_H.ravel(),
            "sigma_G": self.sigma_G.ravel(),
        })


def coupled_dbm(H: MatrixSample, G: MatrixSample, t_grid: Sequence[float], dt: float,
                rng: Any, noise: bool = True, record: str = "grid") -> CoupledRun:
    """σ(H) ve σ(G)'den başlayan, ortak gürültülü iki DBM yörüngesi"""
    if H.shape != G.shape or H.M != H.N:
        raise DynamicsError(f"Kare ve aynı boyutlu girdiler gerekli: {H.shape}, {G.shape}")
    pos0 = np.stack([singular_values(H).values, singular_values(G).values])
    times, frames, _ = run_batch(pos0, t_grid, dt, rng, noise=noise, record=record)
    return CoupledRun(times=times, sigma_H=frames[:, 0, :], sigma_G=frames[:, 1, :])
