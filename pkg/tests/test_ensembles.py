"""
Ensembles testleri: RNG akışları, giriş yasaları, örnekleme
"""

import math
import unittest

import numpy as np

from src.ensembles import (
    EnsembleError,
    EntryLaw,
    RngStreamSpec,
    as_generator,
    check_assumptions,
    match_first_three_moments,
    sample_matrix,
)


class TestRngStreams(unittest.TestCase):
    """(master_seed, stream_id) akışlarının determinizmi"""

    def test_same_stream_same_numbers(self):
        spec = RngStreamSpec(master_seed=7, stream_id=3)
        a = spec.generator().standard_normal(5)
        b = RngStreamSpec(master_seed=7, stream_id=3).generator().standard_normal(5)
        np.testing.assert_array_equal(a, b)

    def test_children_are_distinct(self):
        root = RngStreamSpec(master_seed=7)
        a = root.child(1).generator().standard_normal(5)
        b = root.child(2).generator().standard_normal(5)
        self.assertFalse(np.array_equal(a, b))
        self.assertEqual(root.child(1).child(4).path, (1, 4))

    def test_dict_round_trip(self):
        spec = RngStreamSpec(master_seed=2**63, stream_id=9).child(2)
        self.assertEqual(RngStreamSpec.from_dict(spec.to_dict()), spec)

    def test_invalid_seed(self):
        with self.assertRaises(ValueError):
            RngStreamSpec(master_seed=-1)
        with self.assertRaises(ValueError):
            RngStreamSpec(master_seed=2**64)

    def test_as_generator(self):
        gen = np.random.default_rng(0)
        self.assertIs(as_generator(gen), gen)
        self.assertIsInstance(as_generator(RngStreamSpec(1)), np.random.Generator)
        with self.assertRaises(TypeError):
            as_generator(5)


class TestEntryLaws(unittest.TestCase):
    """Hazır yasalar, isimler ve moment eşleme"""

    def test_named_laws(self):
        self.assertEqual(EntryLaw.from_name("gaussian-real").moments, (0.0, 1.0, 0.0, 3.0))
        self.assertEqual(EntryLaw.from_name("rademacher").moments[3], 1.0)
        self.assertAlmostEqual(EntryLaw.from_name("uniform-symmetric").moments[3], 1.8)
        law = EntryLaw.from_name("rademacher-complex")
        self.assertTrue(law.is_complex)
        self.assertEqual(law.label, "rademacher-complex")
        self.assertTrue(EntryLaw.from_name("gaussian-complex").is_complex)

    def test_unknown_name(self):
        with self.assertRaises(EnsembleError):
            EntryLaw.from_name("cauchy")

    def test_dict_round_trip(self):
        for law in (EntryLaw.gaussian(), EntryLaw.rademacher(complex_entries=True),
                    match_first_three_moments(0.5)):
            self.assertEqual(EntryLaw.from_dict(law.to_dict()), law)

    def test_validate_rejects_unnormalized(self):
        law = EntryLaw.three_point(atoms=(-2.0, 2.0), probs=(0.5, 0.5))
        with self.assertRaises(EnsembleError):
            law.validate()
        with self.assertRaises(EnsembleError):
            sample_matrix(law, 3, 3, RngStreamSpec(1))

    def test_three_point_checks_probabilities(self):
        with self.assertRaises(EnsembleError):
            EntryLaw.three_point(atoms=(-1.0, 1.0), probs=(0.6, 0.6))

    def test_match_first_three_moments(self):
        law = match_first_three_moments(1.0, "below")
        self.assertTrue(np.allclose(law.moments, (0.0, 1.0, 0.0, 2.0), atol=1e-12))
        law.validate()
        above = match_first_three_moments(1.0, "above")
        self.assertAlmostEqual(above.moments[3], 4.0)
        self.assertAlmostEqual(above.fourth_moment_gap(EntryLaw.gaussian()), 1.0)

    def test_match_edge_and_infeasible(self):
        law = match_first_three_moments(2.0, "below")
        self.assertEqual(len(law.atoms), 2)
        self.assertAlmostEqual(law.moments[3], 1.0)
        with self.assertRaises(EnsembleError):
            match_first_three_moments(2.5, "below")
        with self.assertRaises(EnsembleError):
            match_first_three_moments(-0.1)


class TestSampling(unittest.TestCase):
    """sample_matrix ölçekleme ve determinizm"""

    def test_deterministic(self):
        law = EntryLaw.gaussian()
        a = sample_matrix(law, 6, 4, RngStreamSpec(11, 2))
        b = sample_matrix(law, 6, 4, RngStreamSpec(11, 2))
        c = sample_matrix(law, 6, 4, RngStreamSpec(11, 3))
        self.assertTrue(a.same_as(b))
        self.assertFalse(a.same_as(c))
        self.assertEqual(a.shape, (6, 4))

    def test_rademacher_scaling(self):
        A = sample_matrix(EntryLaw.rademacher(), 4, 4, RngStreamSpec(5))
        np.testing.assert_allclose(np.abs(A.entries), 0.5)

    def test_complex_variance(self):
        N = 200
        A = sample_matrix(EntryLaw.gaussian_complex(), N, N, RngStreamSpec(5))
        self.assertTrue(A.is_complex)
        self.assertAlmostEqual(float(np.mean(np.abs(A.entries) ** 2)) * N, 1.0, delta=0.02)
        self.assertLess(abs(float(np.mean(A.entries.real**2 - A.entries.imag**2))) * N, 0.05)

    def test_shape_rules(self):
        with self.assertRaises(EnsembleError):
            sample_matrix(EntryLaw.gaussian(), 2, 3, RngStreamSpec(1))
        with self.assertRaises(EnsembleError):
            sample_matrix(EntryLaw.gaussian(), 3, 0, RngStreamSpec(1))


class TestAssumptions(unittest.TestCase):
    """Moment ve kuyruk raporları"""

    def test_rademacher_passes(self):
        report = check_assumptions(EntryLaw.rademacher(), 20000, RngStreamSpec(3))
        self.assertTrue(report.passed, report.violations)
        self.assertEqual(report.moments[1], 1.0)
        self.assertEqual(report.to_dict()["passed"], True)

    def test_tail_violation_reported(self):
        strict = EntryLaw(kind="gaussian-real", moments=(0.0, 1.0, 0.0, 3.0), theta=10.0)
        report = check_assumptions(strict, 20000, RngStreamSpec(3))
        self.assertFalse(report.passed)
        self.assertTrue(any("kuyruk" in v for v in report.violations))

    def test_too_few_samples(self):
        with self.assertRaises(EnsembleError):
            check_assumptions(EntryLaw.gaussian(), 10, RngStreamSpec(3))


if __name__ == '__main__':
    unittest.main()
