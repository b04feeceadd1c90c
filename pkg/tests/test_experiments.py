"""
Experiments testleri: konfigürasyon, istatistikler, uygulamalar, deney koşuları
"""

import math
import os
import unittest

import numpy as np
from scipy import stats

from src.ensembles import EntryLaw, RngStreamSpec
from src.experiments import (
    EXPERIMENTS,
    ApplicationError,
    ExperimentConfig,
    ExperimentConfigError,
    SummaryStats,
    TrialRecord,
    TrialRunner,
    bootstrap_slope_ci,
    cg_general_bound,
    cg_iterations,
    cg_perturbation_bound,
    dkw_epsilon,
    exact_smallest_cdf,
    fit_slope,
    kolmogorov_critical,
    ks_statistic,
    lop_estimate,
    lop_general_bound,
    lop_perturbation_bound,
    non_increasing,
    quantile_summary,
    run_complex_exact,
    run_condition,
    run_coupled_relaxation,
    run_nonsquare,
    run_smoothed_singular,
    run_universality_smallest,
    survival_sandwich,
)
from src.experiments.nonsquare import ks_ratio_allowance


RUN_SLOW = os.getenv("RUN_SLOW_TESTS", "").lower() in ("1", "true", "yes")


def make_config(name="test", **overrides):
    data = {
        "name": name,
        "N_list": [8],
        "ensemble": EntryLaw.rademacher(),
        "trials": 4,
        "master_seed": 17,
    }
    data.update(overrides)
    return ExperimentConfig(**data)


class TestExperimentConfig(unittest.TestCase):
    """Şema doğrulama ve JSON gidiş-dönüşü"""

    def test_dict_round_trip(self):
        cfg = make_config(M_offset="log", lambda_or_t_grid=[0.5, 1.0], r_grid=[1.0], dt=5e-4)
        self.assertEqual(ExperimentConfig.from_dict(cfg.to_dict()), cfg)

    def test_defaults_from_settings(self):
        cfg = make_config()
        self.assertEqual(cfg.epsilon, 0.2)
        self.assertEqual(cfg.delta, 0.5)
        self.assertEqual(cfg.M_for(8), 8)

    def test_log_offset(self):
        cfg = make_config(M_offset="log")
        self.assertEqual(cfg.M_for(64), 64 + math.ceil(math.log(64)))

    def test_missing_field_named(self):
        data = make_config().to_dict()
        del data["trials"]
        with self.assertRaises(ExperimentConfigError) as ctx:
            ExperimentConfig.from_dict(data)
        self.assertEqual(ctx.exception.field, "trials")

    def test_schema_violations(self):
        base = make_config().to_dict()
        cases = {
            "trials": dict(base, trials=1),
            "N_list": dict(base, N_list=[16, 8]),
            "M_offset": dict(base, M_offset="square"),
            "epsilon_knobs.delta": dict(base, epsilon_knobs={"delta": 1.5}),
            "ensemble": dict(base, ensemble="cauchy"),
            "color": dict(base, color="red"),
        }
        for field_path, data in cases.items():
            with self.assertRaises(ExperimentConfigError) as ctx:
                ExperimentConfig.from_dict(data)
            self.assertEqual(ctx.exception.field, field_path)

    def test_ensemble_by_name(self):
        data = dict(make_config().to_dict(), ensemble="gaussian-complex")
        self.assertTrue(ExperimentConfig.from_dict(data).ensemble.is_complex)


class TestRecords(unittest.TestCase):
    """TrialRecord ve SummaryStats"""

    def test_record_rules(self):
        record = TrialRecord(experiment="x", N=4, M=4, ensemble="rademacher", param=0.0, trial=0,
                             seed=1, sigma1=0.1, sigmaN=1.9, kappa=19.0)
        self.assertTrue(record.kappa_consistent())
        self.assertEqual(TrialRecord.from_row(record.to_row()).to_row().keys(), record.to_row().keys())
        with self.assertRaises(ExperimentConfigError):
            TrialRecord(experiment="x", N=4, M=4, ensemble="r", param=0.0, trial=0, seed=1,
                        sigma1=2.0, sigmaN=1.0, kappa=0.5)
        singular = TrialRecord(experiment="x", N=4, M=4, ensemble="r", param=0.0, trial=0, seed=1,
                               sigma1=0.0, sigmaN=1.0, kappa=math.inf)
        self.assertTrue(singular.kappa_consistent())

    def test_summary_passed(self):
        summary = SummaryStats(experiment="x", checks={"a": True, "b": False})
        self.assertFalse(summary.passed)
        self.assertEqual(summary.failed_checks(), ["b"])
        self.assertFalse(summary.to_dict()["passed"])


class TestStatistics(unittest.TestCase):
    """KS, DKW, kantiller, eğim"""

    def test_ks_single_sample(self):
        self.assertAlmostEqual(ks_statistic([0.5], stats.uniform.cdf), 0.5)

    def test_ks_two_sample(self):
        values = np.sort(np.random.default_rng(0).random(30))
        self.assertEqual(ks_statistic(values, values), 0.0)
        self.assertEqual(ks_statistic([0.0, 1.0], [5.0, 6.0]), 1.0)

    def test_ks_input_rules(self):
        with self.assertRaises(ValueError):
            ks_statistic([], stats.uniform.cdf)
        with self.assertRaises(ValueError):
            ks_statistic([0.9, 0.1], stats.uniform.cdf)

    def test_critical_values(self):
        self.assertAlmostEqual(kolmogorov_critical(100), 0.1358, places=3)
        self.assertAlmostEqual(dkw_epsilon(100), math.sqrt(math.log(40.0) / 200.0))

    def test_exact_cdf(self):
        self.assertEqual(float(exact_smallest_cdf(0.0)), 0.0)
        self.assertEqual(float(exact_smallest_cdf(-1.0)), 0.0)
        self.assertAlmostEqual(float(exact_smallest_cdf(1.0)), 1.0 - math.exp(-1.0))

    def test_quantiles(self):
        q = quantile_summary(np.arange(101, dtype=float))
        self.assertEqual(set(q), {"50", "90", "99"})
        self.assertAlmostEqual(q["50"], 50.0)
        self.assertLessEqual(q["90"], q["99"])
        self.assertTrue(math.isnan(quantile_summary([math.nan])["50"]))

    def test_slopes(self):
        x = np.array([8.0, 16.0, 32.0, 64.0])
        fit = fit_slope(x, 3.0 * x**-2.0)
        self.assertAlmostEqual(fit.slope, -2.0)
        self.assertTrue(fit.within(-2.1, -1.9))
        gen = np.random.default_rng(1)
        samples = [xi**-1.0 * gen.uniform(0.9, 1.1, size=50) for xi in x]
        boot = bootstrap_slope_ci(x, samples, rng=np.random.default_rng(2), resamples=100)
        self.assertLess(boot.ci_lo, boot.ci_hi)
        self.assertAlmostEqual(boot.slope, -1.0, delta=0.1)
        with self.assertRaises(ValueError):
            fit_slope([1.0], [1.0])

    def test_non_increasing(self):
        self.assertTrue(non_increasing([3.0, 2.0, 2.0, 1.0]))
        self.assertFalse(non_increasing([1.0, 2.0]))
        self.assertTrue(non_increasing([1.0, 1.05], slack=0.1))

    def test_survival_sandwich_identical(self):
        values = np.random.default_rng(3).exponential(size=200)
        result = survival_sandwich(values, values, 1.0, shift=0.0, allowance=0.0)
        self.assertEqual(result["excess"], 0.0)
        self.assertGreater(result["margin"], 0.0)


class TestApplications(unittest.TestCase):
    """LoP ve CG hesaplayıcıları"""

    def test_lop(self):
        self.assertAlmostEqual(lop_estimate(100, 100, 100.0), 9.0)
        with self.assertRaises(ApplicationError):
            lop_estimate(100, 100, 0.5)
        with self.assertRaises(ApplicationError):
            lop_estimate(0, 100, 10.0)

    def test_cg(self):
        self.assertEqual(cg_iterations(2.0, 1.0), 1.0)
        with self.assertRaises(ApplicationError):
            cg_iterations(0.5, 1.0)
        with self.assertRaises(ApplicationError):
            cg_iterations(2.0, -1.0)

    def test_bounds(self):
        base = lop_estimate(64, 64, 10.0)
        self.assertGreater(lop_perturbation_bound(64, 64, 10.0, 1.0, 0.2), base)
        self.assertGreater(lop_general_bound(64, 64, 10.0, 0.2), base)
        self.assertAlmostEqual(cg_perturbation_bound(1.0, 1.0, 64, 0.2), 64**0.2 / math.log(2.0))
        self.assertGreater(cg_general_bound(10.0, 1.0, 64, 0.2), cg_iterations(10.0, 1.0))


class TestTrialRunner(unittest.TestCase):
    """Deterministik akışlar ve sıralı katlama"""

    def test_streams(self):
        runner = TrialRunner(make_config())
        self.assertEqual(runner.stream(3, 8), RngStreamSpec(17, 3).child(8))
        self.assertNotEqual(runner.stream(3, 8), runner.stream(4, 8))

    def test_map_order_independent_of_threads(self):
        serial = TrialRunner(make_config(threads=1)).map(8, lambda i, s: (i, s.generator().random()))
        threaded = TrialRunner(make_config(threads=4)).map(8, lambda i, s: (i, s.generator().random()))
        self.assertEqual(serial, threaded)
        self.assertEqual([i for i, _ in serial], [0, 1, 2, 3])


class TestExperimentRuns(unittest.TestCase):
    """Küçük boyutlarda uçtan uca deney koşuları"""

    def test_registry(self):
        self.assertEqual(set(EXPERIMENTS), {"smoothed", "coupled", "universality",
                                            "complex-exact", "condition", "nonsquare"})

    def test_smoothed(self):
        cfg = make_config("smoothed", N_list=[16], lambda_or_t_grid=[0.5, 1.0], trials=3)
        summary = run_smoothed_singular(cfg)
        self.assertEqual(len(summary.records), 6)
        self.assertIn("N=16,lambda=0.5", summary.quantiles)
        self.assertIn("N=16,lambda=1:coupled", summary.quantiles)
        self.assertIn("coupled_median_le_constant[N=16,lambda=1]", summary.checks)
        self.assertIn("lambda[N=16]", summary.slopes)
        self.assertTrue(all(math.isfinite(r.aux2) for r in summary.records))

    def test_smoothed_complex_has_no_coupled_form(self):
        cfg = make_config("smoothed", N_list=[16], lambda_or_t_grid=[1.0], trials=2,
                          ensemble=EntryLaw.gaussian_complex())
        summary = run_smoothed_singular(cfg)
        self.assertTrue(all(math.isnan(r.aux2) for r in summary.records))
        self.assertNotIn("N=16,lambda=1:coupled", summary.quantiles)

    def test_smoothed_rejects_small_lambda(self):
        with self.assertRaises(ExperimentConfigError):
            run_smoothed_singular(make_config("smoothed", N_list=[16], lambda_or_t_grid=[0.2]))

    def test_coupled(self):
        cfg = make_config("coupled", N_list=[64], lambda_or_t_grid=[0.1, 0.2], trials=2)
        summary = run_coupled_relaxation(cfg)
        self.assertEqual(len(summary.records), 4)
        self.assertEqual(sorted({r.param for r in summary.records}), [0.1, 0.2])
        self.assertIn("t[N=64]", summary.slopes)
        self.assertIn("N=64,t=0.1:sigmaN", summary.quantiles)
        self.assertIn("median_le_constant[N=64,t=0.2]", summary.checks)

    def test_coupled_validation(self):
        with self.assertRaises(ExperimentConfigError):
            run_coupled_relaxation(make_config("coupled", N_list=[64], lambda_or_t_grid=[0.01]))
        with self.assertRaises(ExperimentConfigError):
            run_coupled_relaxation(make_config("coupled", N_list=[64], lambda_or_t_grid=[0.1],
                                               M_offset="log"))
        with self.assertRaises(ExperimentConfigError):
            run_coupled_relaxation(make_config("coupled", N_list=[64]))

    def test_universality(self):
        cfg = make_config("universality", N_list=[8, 16], trials=10)
        summary = run_universality_smallest(cfg)
        self.assertEqual(len(summary.records), 20)
        self.assertEqual(len([k for k in summary.margins if k.startswith("universality[N=8,")]), 4)
        self.assertIn("universality_no_violations[N=16]", summary.checks)
        self.assertIn("universality_excess_non_increasing", summary.checks)
        self.assertEqual(summary.config_echo["master_seed"], 17)
        self.assertIn("epsilon", summary.calibration_constants)

    def test_universality_reproducible(self):
        first = run_universality_smallest(make_config("universality", threads=1))
        second = run_universality_smallest(make_config("universality", threads=3))
        self.assertEqual([r.to_row() for r in first.records], [r.to_row() for r in second.records])

    def test_complex_exact(self):
        with self.assertRaises(ExperimentConfigError) as ctx:
            run_complex_exact(make_config("complex-exact"))
        self.assertEqual(ctx.exception.field, "ensemble")

        cfg = make_config("complex-exact", ensemble=EntryLaw.gaussian_complex(), trials=20)
        summary = run_complex_exact(cfg)
        self.assertTrue(0.0 <= summary.ks["N=8"] <= 1.0)
        self.assertIn("ks_within_threshold[N=8]", summary.checks)
        self.assertIn("p_le_1_matches[N=8]", summary.checks)
        report = summary.extras["N=8"]
        self.assertAlmostEqual(report["p_le_1_exact"], 1.0 - math.exp(-1.0))

    def test_condition(self):
        cfg = make_config("condition", N_list=[16], lambda_or_t_grid=[1.0], trials=3,
                          ensemble=EntryLaw.gaussian())
        summary = run_condition(cfg)
        self.assertEqual(len(summary.records), 6)
        base = [r for r in summary.records if r.param == 0.0]
        for record in base:
            self.assertAlmostEqual(record.aux1, record.kappa / 16)
        apps = summary.extras["applications"]["N=16"]
        self.assertIn("lop_H", apps)
        self.assertIn("cg_bound[lambda=1]", apps)
        self.assertAlmostEqual(apps["lop_general_bound"],
                               lop_general_bound(16, 16, max(apps["kappa_G"], 1.0), cfg.epsilon))
        self.assertGreater(apps["cg_general_bound"], cg_iterations(max(apps["kappa_G"], 1.0), 1.0))
        self.assertIn("coupled_median_le_constant[N=16,lambda=1]", summary.checks)
        self.assertIn("condition_no_violations[N=16]", summary.checks)

    def test_condition_rejects_small_lambda(self):
        with self.assertRaises(ExperimentConfigError):
            run_condition(make_config("condition", N_list=[16], lambda_or_t_grid=[0.1]))

    def test_nonsquare(self):
        cfg = make_config("nonsquare", M_offset="log", trials=4)
        summary = run_nonsquare(cfg)
        self.assertEqual(len(summary.records), 20)
        self.assertEqual(summary.extras["M[N=8]"], 8 + math.ceil(math.log(8)))
        augmented = [r for r in summary.records if r.param == 2.0]
        self.assertTrue(all(r.M == 11 for r in augmented))
        self.assertIn("rect_vs_gaussian[N=8]", summary.ks)
        self.assertIn("square_universality_no_violations[N=8]", summary.checks)

    def test_nonsquare_complex_ks_verdict(self):
        law = EntryLaw.from_name("gaussian-complex")
        summary = run_nonsquare(make_config("nonsquare", ensemble=law, M_offset="log"))
        self.assertIn("rect_ks_within_square_ratio[N=8]", summary.checks)
        self.assertIn("rect_ks_vs_square[N=8]", summary.margins)
        self.assertIn("rect_vs_exact[N=8]", summary.ks)

        same = run_nonsquare(make_config("nonsquare", ensemble=law, M_offset="zero"))
        self.assertEqual(same.ks["rect_vs_gaussian[N=8]"], same.ks["square_vs_gaussian[N=8]"])
        self.assertTrue(same.checks["rect_ks_within_square_ratio[N=8]"])
        self.assertAlmostEqual(ks_ratio_allowance(0.2, 100), 0.3 + math.sqrt(2.0) * kolmogorov_critical(100))

        real = run_nonsquare(make_config("nonsquare"))
        self.assertNotIn("rect_ks_within_square_ratio[N=8]", real.checks)

    def test_nonsquare_square_offset_matches_universality(self):
        summary = run_nonsquare(make_config("nonsquare", M_offset="zero"))
        rect = [r.aux1 for r in summary.records if r.param == 0.0]
        square = [r.aux1 for r in summary.records if r.param == 3.0]
        self.assertEqual(rect, square)
        reference = run_universality_smallest(make_config("universality"))
        self.assertEqual(rect, [r.aux1 for r in reference.records])


@unittest.skipUnless(RUN_SLOW, "RUN_SLOW_TESTS ayarlı değil")
class TestExperimentsSlow(unittest.TestCase):
    """Gerçekçi boyutlarda doğrulama kontrolleri"""

    def test_universality_passes(self):
        cfg = make_config("universality", N_list=[32, 64], trials=400)
        summary = run_universality_smallest(cfg)
        self.assertTrue(summary.passed, summary.failed_checks())

    def test_complex_exact_passes(self):
        cfg = make_config("complex-exact", N_list=[32], trials=400,
                          ensemble=EntryLaw.gaussian_complex())
        summary = run_complex_exact(cfg)
        self.assertTrue(summary.passed, summary.failed_checks())

    def test_relaxation_slope(self):
        cfg = make_config("coupled", N_list=[128], lambda_or_t_grid=[0.05, 0.1, 0.2, 0.4],
                          trials=100)
        summary = run_coupled_relaxation(cfg)
        slope = summary.slopes["t[N=128]"]
        self.assertLess(slope["slope"], 0.0)


if __name__ == '__main__':
    unittest.main()
