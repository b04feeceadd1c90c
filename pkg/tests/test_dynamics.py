"""
Dynamics testleri: OU akışı, DBM, çekirdek operatörü, birleşik akış, φ̂
"""

import math
import unittest
from unittest import mock

import numpy as np

from src.dynamics import (
    DbmState,
    DynamicsError,
    KernelOperator,
    MassConservationError,
    StabilityError,
    apriori_curve,
    bulk_window,
    coupled_dbm,
    coupling_run,
    dbm_step,
    deterministic_transport_residual,
    evolve_phi,
    hat_phi,
    integrate_along,
    kernel_coefficients,
    lambda_to_time,
    mass_outside,
    ou_interpolate,
    ou_sde_path,
    rough_decay_check,
    run_dbm,
    short_range_propagator,
    smoothed_matrix,
    split_kernel,
    weighted_stieltjes,
)
from src.ensembles import EntryLaw, RngStreamSpec, sample_matrix
from src.spectra import SymmetrizedSpectrum, gamma_quantiles, singular_values


def _pair(N, seed=1):
    H = sample_matrix(EntryLaw.rademacher(), N, N, RngStreamSpec(seed, 1))
    G = sample_matrix(EntryLaw.gaussian(), N, N, RngStreamSpec(seed, 2))
    return H, G


class TestOrnsteinUhlenbeck(unittest.TestCase):
    """Kapalı form ve SDE"""

    def test_interpolate(self):
        H, G = _pair(5)
        self.assertIs(ou_interpolate(H, G, 0.0), H)
        t = 0.3
        expected = math.exp(-t / 2) * H.entries + math.sqrt(1 - math.exp(-t)) * G.entries
        np.testing.assert_allclose(ou_interpolate(H, G, t).entries, expected)
        with self.assertRaises(DynamicsError):
            ou_interpolate(H, G, -0.1)

    def test_smoothed_is_rescaled_flow(self):
        H, G = _pair(6)
        for lam in (0.5, 1.0, 3.0):
            lhs = singular_values(smoothed_matrix(H, G, lam)).values
            flow = ou_interpolate(H, G, lambda_to_time(lam))
            rhs = math.sqrt(1 + lam * lam) * singular_values(flow).values
            np.testing.assert_allclose(lhs, rhs, rtol=1e-10, atol=1e-12)
        self.assertAlmostEqual(lambda_to_time(1.0), math.log(2.0))

    def test_shape_mismatch(self):
        H = sample_matrix(EntryLaw.gaussian(), 4, 4, RngStreamSpec(1))
        G = sample_matrix(EntryLaw.gaussian(), 5, 4, RngStreamSpec(2))
        with self.assertRaises(DynamicsError):
            smoothed_matrix(H, G, 1.0)

    def test_sde_without_noise_decays(self):
        H, _ = _pair(4)
        out = ou_sde_path(H, 0.01, 10, RngStreamSpec(3), noise=False)
        np.testing.assert_allclose(out.entries, H.entries * (1 - 0.005) ** 10)

    def test_sde_step_limits(self):
        H, _ = _pair(4)
        with self.assertRaises(DynamicsError):
            ou_sde_path(H, 0.1, 10, RngStreamSpec(3))
        with self.assertRaises(DynamicsError):
            ou_sde_path(H, 0.01, 5000, RngStreamSpec(3))


class TestDysonBrownianMotion(unittest.TestCase):
    """Tekil değer DBM entegratörü"""

    def setUp(self):
        H, _ = _pair(12, seed=4)
        self.initial = singular_values(H).values

    def test_ordering_and_grid(self):
        trajectory = run_dbm(self.initial, [0.02, 0.05], 1e-3, RngStreamSpec(5))
        self.assertTrue(np.all(trajectory.positions[:, 0] >= 0))
        self.assertTrue(np.all(np.diff(trajectory.positions, axis=1) > 0))
        self.assertEqual(trajectory.index_at(0.05), len(trajectory) - 1)
        trajectory.index_at(0.02)
        frame = trajectory.to_frame()
        self.assertEqual(list(frame.columns), ["t", "k", "s_k"])
        self.assertEqual(len(frame), len(trajectory) * 24)

    def test_record_grid_only(self):
        trajectory = run_dbm(self.initial, [0.01, 0.02], 1e-3, RngStreamSpec(5), record="grid")
        np.testing.assert_allclose(trajectory.times, [0.0, 0.01, 0.02])

    def test_deterministic(self):
        a = run_dbm(self.initial, [0.02], 1e-3, RngStreamSpec(5))
        b = run_dbm(self.initial, [0.02], 1e-3, RngStreamSpec(5))
        np.testing.assert_array_equal(a.positions, b.positions)

    def test_noise_free_step_ignores_stream(self):
        state = DbmState(spectrum=SymmetrizedSpectrum(self.initial))
        a = dbm_step(state, 1e-4, RngStreamSpec(1), noise=False)
        b = dbm_step(state, 1e-4, RngStreamSpec(2), noise=False)
        np.testing.assert_array_equal(a.spectrum.positive, b.spectrum.positive)
        self.assertTrue(np.all(np.diff(a.spectrum.positive) > 0))
        self.assertAlmostEqual(a.t, 1e-4)

    def test_consecutive_steps_draw_fresh_noise(self):
        spec = RngStreamSpec(3)
        start = DbmState(spectrum=SymmetrizedSpectrum(self.initial))
        first = dbm_step(start, 1e-4, spec)
        second = dbm_step(first, 1e-4, spec)
        self.assertEqual((first.step, second.step), (1, 2))

        kick1 = first.spectrum.positive - dbm_step(start, 1e-4, spec, noise=False).spectrum.positive
        kick2 = second.spectrum.positive - dbm_step(first, 1e-4, spec, noise=False).spectrum.positive
        self.assertGreater(np.max(np.abs(kick1 - kick2)), 1e-6)

        again = dbm_step(start, 1e-4, spec)
        np.testing.assert_array_equal(again.spectrum.positive, first.spectrum.positive)

    def test_bad_arguments(self):
        with self.assertRaises(DynamicsError):
            run_dbm(self.initial, [0.01], 0.0, RngStreamSpec(5))
        with self.assertRaises(DynamicsError):
            run_dbm(self.initial, [0.01], 1e-3, RngStreamSpec(5), record="all")
        with self.assertRaises(DynamicsError):
            run_dbm(self.initial, [-0.01], 1e-3, RngStreamSpec(5))

    def test_coupled_identical_start(self):
        H, _ = _pair(8)
        run = coupled_dbm(H, H, [0.01, 0.03], 1e-3, RngStreamSpec(6))
        np.testing.assert_array_equal(run.max_gap(), np.zeros(len(run.times)))
        sH, sG = run.pair_at(0.03)
        np.testing.assert_array_equal(sH, sG)
        self.assertEqual(list(run.to_frame().columns), ["t", "k", "sigma_H", "sigma_G"])

    def test_coupled_gap_shrinks(self):
        H, G = _pair(16, seed=9)
        run = coupled_dbm(H, G, [0.2], 1e-3, RngStreamSpec(7))
        start = run.max_gap()[0]
        self.assertLess(run.max_gap()[-1], start)

    def test_coupled_requires_square(self):
        H = sample_matrix(EntryLaw.gaussian(), 5, 4, RngStreamSpec(1))
        with self.assertRaises(DynamicsError):
            coupled_dbm(H, H, [0.01], 1e-3, RngStreamSpec(1))


class TestKernel(unittest.TestCase):
    """Parabolik çekirdek ve kısa menzilli yayıcı"""

    @classmethod
    def setUpClass(cls):
        H, _ = _pair(16, seed=2)
        cls.initial = singular_values(H).values
        cls.trajectory = run_dbm(cls.initial, [0.05], 1e-3, RngStreamSpec(3))

    def test_coefficients(self):
        c = kernel_coefficients(self.initial)
        np.testing.assert_allclose(c, c.T)
        self.assertTrue(np.all(np.diag(c) == 0.0))
        self.assertTrue(np.all(np.fliplr(c).diagonal() == 0.0))
        self.assertTrue(np.all(c >= 0.0))

    def test_operator_conserves(self):
        K = KernelOperator.from_spectrum(self.initial)
        np.testing.assert_allclose(K.apply(np.ones(32)), 0.0, atol=1e-10)
        v = np.random.default_rng(0).standard_normal(32)
        self.assertAlmostEqual(float(K.apply(v).sum()), 0.0, places=8)
        self.assertAlmostEqual(K.stable_step(), 1.0 / K.max_rate())

    def test_split(self):
        K = KernelOperator.from_spectrum(self.initial)
        short, long_ = split_kernel(K, 3)
        np.testing.assert_allclose((short + long_).coefficients, K.coefficients)
        with self.assertRaises(DynamicsError):
            split_kernel(K, 0)

    def test_stability_guard(self):
        rate = KernelOperator.from_spectrum(self.trajectory.positions[0]).max_rate()
        with self.assertRaises(StabilityError):
            integrate_along(np.ones(32), self.trajectory.snapshots(), 5.0 / rate)

    def test_maximum_principle(self):
        rate = max(KernelOperator.from_spectrum(p).max_rate() for p in self.trajectory.positions)
        dt = 0.5 / rate
        phi0 = np.random.default_rng(1).standard_normal(32)
        psi0 = np.abs(phi0)
        phi = evolve_phi(phi0, self.trajectory, dt)
        psi = evolve_phi(psi0, self.trajectory, dt)
        self.assertAlmostEqual(float(phi.sum()), float(phi0.sum()), places=8)
        self.assertTrue(np.all(np.abs(phi) <= psi + 1e-12))
        self.assertLessEqual(float(psi.max()), float(psi0.max()) + 1e-12)

    def test_short_range_propagator(self):
        profile = short_range_propagator(self.trajectory, 4, 0.0, 0.05, 5)
        self.assertAlmostEqual(float(profile.sum()), 1.0, places=8)
        self.assertTrue(np.all(profile >= -1e-12))
        self.assertLess(mass_outside(profile, 5, 16), 1e-4)
        self.assertEqual(mass_outside(profile, 5, 64), 0.0)
        with self.assertRaises(DynamicsError):
            short_range_propagator(self.trajectory, 4, 0.0, 0.5, 5)
        with self.assertRaises(DynamicsError):
            short_range_propagator(self.trajectory, 4, 0.0, 0.05, 0)

    def test_propagator_mass_loss_raises(self):
        leaky = lambda delta, *args, **kwargs: 0.9 * delta
        with mock.patch("src.dynamics.kernel.integrate_along", side_effect=leaky):
            with self.assertRaises(MassConservationError) as ctx:
                short_range_propagator(self.trajectory, 4, 0.0, 0.05, 5)
        self.assertAlmostEqual(float(ctx.exception.profile.sum()), 0.9)
        self.assertIsInstance(ctx.exception, DynamicsError)


class TestCoupling(unittest.TestCase):
    """(φ, ψ) akışı ve ağırlıklı Stieltjes dönüşümleri"""

    @classmethod
    def setUpClass(cls):
        H, G = _pair(8, seed=12)
        cls.coupling = coupling_run(H, G, 0.5, [0.01, 0.02], 1e-3, RngStreamSpec(13))
        cls.psi0_max = float(np.max(cls.coupling.state_at(0.0).psi))

    def test_invariants(self):
        for state in self.coupling.states:
            flags = state.invariant_violations(self.psi0_max)
            self.assertTrue(all(flags.values()), flags)

    def test_finite_difference_agrees(self):
        self.assertLess(self.coupling.discrepancy(), 0.1 * self.psi0_max)
        frame = self.coupling.to_frame()
        self.assertEqual(list(frame.columns), ["t", "k", "phi_k", "psi_k"])

    def test_weighted_stieltjes(self):
        sample = weighted_stieltjes(self.coupling.state_at(0.02), 0.3 + 0.5j)
        self.assertGreaterEqual(sample.value_psi.imag, 0.0)
        with self.assertRaises(DynamicsError):
            weighted_stieltjes(self.coupling.state_at(0.02), 0.3)

    def test_rough_decay_share(self):
        report = rough_decay_check(self.coupling.state_at(0.02))
        self.assertTrue(0.0 <= report["share"] <= 1.0)

    def test_nu_range(self):
        H, G = _pair(4)
        with self.assertRaises(DynamicsError):
            coupling_run(H, G, 1.5, [0.01], 1e-3, RngStreamSpec(1))

    def test_deterministic_transport(self):
        self.assertLess(deterministic_transport_residual(0.3 + 0.5j, 0.2), 1e-6)

    def test_apriori_curve(self):
        z = apriori_curve(100, 0.0, eps=0.1)
        self.assertAlmostEqual(z.imag, 100 ** -0.6 / math.sqrt(2.0))


class TestHatPhi(unittest.TestCase):
    """Karakteristikler boyunca taşınan φ̂"""

    def setUp(self):
        H, G = _pair(20, seed=5)
        self.sH = singular_values(H)
        self.sG = singular_values(G)
        self.gammas = gamma_quantiles(20)

    def test_window(self):
        labels = bulk_window(10, 0.2)
        self.assertEqual(int(np.max(labels)), 8)
        self.assertEqual(int(np.min(labels)), -8)
        with self.assertRaises(DynamicsError):
            bulk_window(10, 0.8)

    def test_identical_spectra_vanish(self):
        result = hat_phi(self.sH, self.sH, self.gammas, 0.1, 0.25)
        np.testing.assert_allclose(result.values, 0.0, atol=1e-14)

    def test_antisymmetric(self):
        result = hat_phi(self.sH, self.sG, self.gammas, 0.1, 0.25)
        np.testing.assert_allclose(result.values, -result.values[::-1])
        self.assertEqual(result.at(2), -result.at(-2))
        self.assertEqual(list(result.to_frame().columns), ["t", "k", "hat_phi"])

    def test_time_range(self):
        with self.assertRaises(DynamicsError):
            hat_phi(self.sH, self.sG, self.gammas, 2.0, 0.25)


if __name__ == '__main__':
    unittest.main()
