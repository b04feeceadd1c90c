"""
Değişmez doğrulama paketi

Her kontrol (ad, geçti, ayrıntı) döndürür. quick=True küçük boyutlarda
deterministik kontrolleri koşturur; tam paket HS izi ve sonlu yayılma
hızı kontrollerini de içerir.
"""
import logging
import math
import tempfile
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, List, Optional, Tuple

import numpy as np
from scipy import stats

from ..comparison import HsGrid, SandwichViolation, TestFunctionSpec, hs_trace, sandwich_check, trace_f
from ..config import get_settings
from ..dynamics import (
    KernelOperator,
    MassConservationError,
    evolve_phi,
    mass_outside,
    run_dbm,
    short_range_propagator,
)
from ..ensembles import EntryLaw, RngStreamSpec, sample_matrix
from ..experiments import (
    ExperimentConfig,
    TrialRecord,
    cg_iterations,
    exact_smallest_cdf,
    ks_statistic,
    lop_estimate,
)
from ..spectra import (
    condition_number,
    girko_eigenvalues,
    rigidity_check,
    singular_values,
    typical_locations,
)
from .io import read_records_csv, write_records_csv


logger = logging.getLogger(__name__)

VERIFY_SEED = 20240601


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""

    def as_row(self) -> Tuple[str, bool, str]:
        return self.name, self.passed, self.detail


def _stream(sub: int) -> RngStreamSpec:
    return RngStreamSpec(master_seed=VERIFY_SEED, stream_id=sub)


def check_determinism() -> CheckResult:
    law = EntryLaw.from_name("rademacher")
    a = sample_matrix(law, 4, 4, _stream(1))
    b = sample_matrix(law, 4, 4, _stream(1))
    return CheckResult("rng_determinism", a.same_as(b), "aynı akış → aynı matris")


def check_girko(count: int, max_n: int) -> CheckResult:
    gen = np.random.default_rng(VERIFY_SEED)
    worst = 0.0
    for i in range(count):
        N = int(gen.integers(1, max_n + 1))
        M = N + int(gen.integers(0, 5))
        A = sample_matrix(EntryLaw.gaussian(), M, N, _stream(100 + i))
        sigma = singular_values(A).values
        expected = np.sort(np.concatenate([-sigma, sigma, np.zeros(M - N)]))
        worst = max(worst, float(np.max(np.abs(np.sort(girko_eigenvalues(A)) - expected))))
    return CheckResult("girko_oracle", worst <= 1e-10, f"max sapma {worst:.2e}")


def check_kappa() -> CheckResult:
    spectrum = singular_values(sample_matrix(EntryLaw.gaussian(), 8, 8, _stream(2)))
    record = TrialRecord(experiment="verify", N=8, M=8, ensemble="gaussian-real", param=0.0,
                         trial=0, seed=VERIFY_SEED, sigma1=spectrum.sigma1,
                         sigmaN=spectrum.sigmaN, kappa=condition_number(spectrum))
    return CheckResult("kappa_consistency", record.kappa_consistent(), f"κ = {record.kappa:.6g}")


def check_maximum_principle(N: int, samples: int) -> CheckResult:
    initial = singular_values(sample_matrix(EntryLaw.gaussian(), N, N, _stream(3))).values
    trajectory = run_dbm(initial, [0.05], get_settings().simulation.dt_max, _stream(4))
    rate = max(KernelOperator.from_spectrum(p).max_rate() for p in trajectory.positions)
    dt = 0.5 / rate
    gen = np.random.default_rng(VERIFY_SEED)
    worst_order, worst_sum, grew = 0.0, 0.0, False
    for _ in range(samples):
        phi0 = gen.standard_normal(2 * N)
        psi0 = np.abs(phi0)
        phi = evolve_phi(phi0, trajectory, dt)
        psi = evolve_phi(psi0, trajectory, dt)
        worst_order = max(worst_order, float(np.max(np.abs(phi) - psi)))
        worst_sum = max(worst_sum, abs(float(phi.sum() - phi0.sum())))
        grew = grew or float(psi.max()) > float(psi0.max()) + 1e-12
    passed = worst_order <= 1e-12 and worst_sum <= 1e-8 and not grew
    return CheckResult("maximum_principle", passed,
                       f"max(|φ|−ψ) = {worst_order:.2e}, Σφ sapması = {worst_sum:.2e}")


def check_applications() -> CheckResult:
    lop = lop_estimate(100, 100, 100.0)
    cg = cg_iterations(2.0, 1.0)
    return CheckResult("applications", math.isclose(lop, 9.0) and cg == 1.0,
                       f"LoP = {lop:g}, T = {cg:g}")


def check_ks() -> CheckResult:
    value = ks_statistic([0.5], stats.uniform.cdf)
    exact = float(exact_smallest_cdf(1.0))
    passed = math.isclose(value, 0.5) and math.isclose(exact, 1.0 - math.exp(-1.0))
    return CheckResult("ks_and_exact_law", passed, f"KS = {value:g}, F(1) = {exact:.4f}")


def check_round_trip() -> CheckResult:
    minimum = get_settings().experiments.min_trials
    cfg = ExperimentConfig(name="verify", N_list=[8], ensemble=EntryLaw.gaussian(),
                           trials=minimum, master_seed=1)
    same_config = ExperimentConfig.from_dict(cfg.to_dict()) == cfg
    spectrum = singular_values(sample_matrix(EntryLaw.gaussian(), 8, 8, _stream(5)))
    record = TrialRecord(experiment="verify", N=8, M=8, ensemble="gaussian-real", param=0.1,
                         trial=0, seed=1, sigma1=spectrum.sigma1, sigmaN=spectrum.sigmaN,
                         kappa=condition_number(spectrum), aux1=1.0 / 3.0)
    with tempfile.TemporaryDirectory() as tmp:
        path = Path(tmp) / "records.csv"
        write_records_csv([record], path)
        back = read_records_csv(path)
    same_record = len(back) == 1 and back[0].to_row() == record.to_row()
    return CheckResult("round_trip", same_config and same_record,
                       f"config = {same_config}, csv = {same_record}")


def check_hs_trace(N: int = 16) -> CheckResult:
    spec = TestFunctionSpec(r=2.0, rho=N**-1.2, a=1.5, N=N)
    A = sample_matrix(EntryLaw.gaussian(), N, N, _stream(6))
    exact = trace_f(spec, singular_values(A).symmetrized())
    grid = HsGrid.for_spec(spec)
    coarse = abs(hs_trace(spec, A, grid) - exact)
    fine = abs(hs_trace(spec, A, grid.refined()) - exact)
    factor = coarse / fine if fine > 0 else math.inf
    return CheckResult("hs_trace", fine <= 1e-2,
                       f"hata {fine:.2e}, yarılama oranı {factor:.2f}")


def check_finite_speed(N: int = 128, l: int = 16, width: float = 0.05,
                       indices: int = 20) -> CheckResult:
    initial = singular_values(sample_matrix(EntryLaw.gaussian(), N, N, _stream(7))).values
    trajectory = run_dbm(initial, [width], get_settings().simulation.dt_max, _stream(8))
    worst_mass, worst_tail = 0.0, 0.0
    for k in np.linspace(N // 4, 3 * N // 4, indices).astype(int):
        try:
            profile = short_range_propagator(trajectory, l, 0.0, width, int(k))
        except MassConservationError as e:
            profile = e.profile
        worst_mass = max(worst_mass, abs(float(profile.sum()) - 1.0))
        worst_tail = max(worst_tail, mass_outside(profile, int(k), 8 * l))
    passed = worst_mass <= 1e-8 and worst_tail <= 1e-6
    return CheckResult("finite_speed", passed,
                       f"kütle sapması {worst_mass:.2e}, dış kütle {worst_tail:.2e}")


def check_sandwich(N: int = 64, trials: int = 10_000, r: float = 1.0) -> CheckResult:
    violations = 0
    for i in range(trials):
        A = sample_matrix(EntryLaw.gaussian(), N, N, _stream(1000 + i))
        try:
            sandwich_check(A, r, N**-1.4)
        except SandwichViolation:
            violations += 1
    return CheckResult("sandwich", violations == 0, f"{trials} denemede {violations} ihlal")


def check_rigidity(N: int = 200, epsilon: float = 0.5) -> CheckResult:
    spectrum = singular_values(sample_matrix(EntryLaw.gaussian(), N, N, _stream(9))).symmetrized()
    report = rigidity_check(spectrum, typical_locations(N), epsilon)
    return CheckResult("rigidity", report.passed, f"{len(report.violations)} ihlal (ε = {epsilon})")


def run_verify(quick: bool = True, log: Optional[logging.Logger] = None) -> List[CheckResult]:
    log = log or logger
    checks: List[Callable[[], CheckResult]] = [
        check_determinism,
        lambda: check_girko(20 if quick else 100, 16 if quick else 60),
        check_kappa,
        lambda: check_maximum_principle(16 if quick else 64, 10 if quick else 100),
        check_applications,
        check_ks,
        check_round_trip,
    ]
    if not quick:
        checks += [check_hs_trace, check_finite_speed, check_sandwich, check_rigidity]

    results = []
    for check in checks:
        try:
            result = check()
        except Exception as e:
            log.error(f"✗ Doğrulama hatası: {e}", exc_info=True)
            result = CheckResult(getattr(check, "__name__", "check"), False, str(e))
        marker = "✓" if result.passed else "✗"
        log.info(f"{marker} {result.name}: {result.detail}")
        results.append(result)
    return results
