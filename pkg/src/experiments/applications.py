"""
Uygulama hesaplayıcıları: hassasiyet kaybı (LoP) ve eşlenik gradyan (CG)

LoP taban 10 ile hesaplanır (doğru ondalık basamak sayısı); O(1) terimi
atılır. CG yineleme sayısı T_δ = ½κδ olduğu gibi uygulanır.
"""
import math


class ApplicationError(ValueError):
    """Geçersiz κ, δ ya da λ"""


def _require_kappa(kappa: float) -> None:
    if not kappa >= 1.0:
        raise ApplicationError(f"κ ≥ 1 olmalı (verilen {kappa})")


def _smoothing_log(lam: float) -> float:
    if lam <= 0:
        raise ApplicationError(f"λ > 0 olmalı (verilen {lam})")
    return math.log1p(lam * lam)


def lop_estimate(M: int, N: int, kappa: float) -> float:
    """log₁₀(M·N^{3/2}) + 2·log₁₀ κ"""
    _require_kappa(kappa)
    if M < 1 or N < 1:
        raise ApplicationError(f"M, N ≥ 1 olmalı (M = {M}, N = {N})")
    return math.log10(M) + 1.5 * math.log10(N) + 2.0 * math.log10(kappa)


def cg_iterations(kappa: float, delta: float) -> float:
    """½·κ·δ"""
    _require_kappa(kappa)
    if delta < 0:
        raise ApplicationError(f"δ ≥ 0 olmalı (verilen {delta})")
    return 0.5 * kappa * delta


def lop_perturbation_bound(M: int, N: int, kappa_G: float, lam: float, eps: float) -> float:
    """Düzleştirilmiş matris için LoP üst sınırı: LoP(G) + N^(-1+ε)/log(1+λ²)"""
    return lop_estimate(M, N, kappa_G) + N ** (-1.0 + eps) / _smoothing_log(lam)


def lop_general_bound(M: int, N: int, kappa_G: float, eps: float) -> float:
    """Genel yasa için LoP üst sınırı: LoP(G) + N^(-2/3+ε)"""
    return lop_estimate(M, N, kappa_G) + N ** (-2.0 / 3.0 + eps)


def cg_perturbation_bound(delta: float, lam: float, N: int, eps: float) -> float:
    """|T_δ(H+λG) − √(1+λ²)·T_δ(G)| için sınır: δ·N^ε/log(1+λ²)"""
    return delta * N**eps / _smoothing_log(lam)


def cg_general_bound(kappa_G: float, delta: float, N: int, eps: float) -> float:
    """½κ(G)δ + δ·N^(1/3+ε)"""
    return cg_iterations(kappa_G, delta) + delta * N ** (1.0 / 3.0 + eps)
