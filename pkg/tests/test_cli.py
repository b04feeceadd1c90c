"""
CLI testleri: alt komutlar, çıkış kodları, kalıcılık ve manifesto
"""

import io
import json
import os
import shutil
import tempfile
import unittest
from contextlib import redirect_stderr, redirect_stdout
from pathlib import Path

from src.cli import (
    EXIT_OK,
    EXIT_USAGE,
    ConfigError,
    cli_main,
    prepare_output_dir,
    read_manifest,
    read_records_csv,
    run_verify,
    save_config,
    verify_manifest,
)
from src.ensembles import EntryLaw
from src.experiments import ExperimentConfig


def run_cli(*argv):
    """cli_main'i çalıştır; (çıkış kodu, stdout) döndür"""
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = cli_main(list(argv))
    return code, out.getvalue()


class CliTestCase(unittest.TestCase):

    def setUp(self):
        self.temp_dir = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.temp_dir, ignore_errors=True)

    def path(self, *parts):
        return os.path.join(self.temp_dir, *parts)


class TestApps(CliTestCase):
    """LoP / CG hesaplayıcıları"""

    def test_lop(self):
        code, out = run_cli("apps", "lop", "--M", "100", "--N", "100", "--kappa", "100")
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(out.strip(), "9")

    def test_cg(self):
        code, out = run_cli("apps", "cg", "--kappa", "2", "--delta", "1")
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(out.strip(), "1")

    def test_kappa_below_one(self):
        code, _ = run_cli("apps", "cg", "--kappa", "0.5", "--delta", "1")
        self.assertEqual(code, EXIT_USAGE)


class TestUsageErrors(CliTestCase):
    """Kullanım hataları çıkış kodu 2"""

    def test_unknown_command(self):
        self.assertEqual(run_cli("tour")[0], EXIT_USAGE)

    def test_bad_trials(self):
        self.assertEqual(run_cli("universality", "--trials", "abc")[0], EXIT_USAGE)
        code, _ = run_cli("universality", "--N", "8", "--trials", "1", "--out", self.path("u"))
        self.assertEqual(code, EXIT_USAGE)

    def test_unknown_ensemble(self):
        code, _ = run_cli("sample", "--N", "4", "--ensemble", "cauchy", "--out", self.path("s"))
        self.assertEqual(code, EXIT_USAGE)

    def test_missing_config_file(self):
        code, _ = run_cli("universality", "--config", self.path("yok.json"))
        self.assertEqual(code, EXIT_USAGE)

    def test_config_missing_field(self):
        config_path = self.path("bad.json")
        Path(config_path).write_text(json.dumps({"name": "u", "N_list": [8], "ensemble": "rademacher",
                                                 "master_seed": 1}), encoding="utf-8")
        code, _ = run_cli("universality", "--config", config_path, "--out", self.path("u"))
        self.assertEqual(code, EXIT_USAGE)

    def test_smoothed_small_lambda(self):
        code, _ = run_cli("smoothed", "--N", "16", "--grid", "0.1", "--out", self.path("s"))
        self.assertEqual(code, EXIT_USAGE)


class TestOutputDirectory(CliTestCase):
    """Dolu dizin yalnızca --force ile"""

    def test_force_guard(self):
        target = Path(self.path("run"))
        target.mkdir()
        (target / "old.txt").write_text("x", encoding="utf-8")
        with self.assertRaises(ConfigError) as ctx:
            prepare_output_dir(target)
        self.assertEqual(ctx.exception.field, "--out")
        self.assertEqual(prepare_output_dir(target, force=True), target)

    def test_empty_directory_reused(self):
        target = Path(self.path("empty"))
        target.mkdir()
        self.assertEqual(prepare_output_dir(target), target)

    def test_cli_refuses_existing_run(self):
        out = self.path("sample")
        self.assertEqual(run_cli("sample", "--N", "4", "--out", out)[0], EXIT_OK)
        self.assertEqual(run_cli("sample", "--N", "4", "--out", out)[0], EXIT_USAGE)
        self.assertEqual(run_cli("sample", "--N", "4", "--out", out, "--force")[0], EXIT_OK)


class TestSampleAndDbm(CliTestCase):
    """sample ve dbm komutları"""

    def test_sample_deterministic(self):
        first, second = self.path("a"), self.path("b")
        run_cli("sample", "--N", "5", "--M", "7", "--seed", "3", "--out", first)
        run_cli("sample", "--N", "5", "--M", "7", "--seed", "3", "--out", second)
        for name in ("matrix.csv", "spectrum.csv"):
            self.assertEqual(Path(first, name).read_bytes(), Path(second, name).read_bytes())
        self.assertEqual(read_manifest(first).artifact_hashes, read_manifest(second).artifact_hashes)

    def test_sample_complex_has_imaginary_column(self):
        out = self.path("c")
        run_cli("sample", "--N", "3", "--ensemble", "gaussian-complex", "--out", out)
        header = Path(out, "matrix.csv").read_text(encoding="utf-8").splitlines()[0]
        self.assertEqual(header, "i,j,re,im")

    def test_dbm_trajectory(self):
        out = self.path("dbm")
        code, _ = run_cli("dbm", "--N", "8", "--t", "0.01", "0.02", "--record", "grid", "--out", out)
        self.assertEqual(code, EXIT_OK)
        self.assertTrue(Path(out, "trajectory.csv").exists())
        self.assertEqual(verify_manifest(out), [])


class TestExperimentCommand(CliTestCase):
    """Deney alt komutları, kayıtlar ve manifesto"""

    def run_universality(self, out, *extra):
        return run_cli("universality", "--N", "8", "--trials", "4", "--seed", "5", "--out", out, *extra)

    def test_artifacts_and_manifest(self):
        out = self.path("u")
        code, _ = self.run_universality(out)
        self.assertIn(code, (0, 1))
        records = read_records_csv(Path(out, "records.csv"))
        self.assertEqual(len(records), 4)
        self.assertTrue(all(r.kappa_consistent() for r in records))
        summary = json.loads(Path(out, "summary.json").read_text(encoding="utf-8"))
        self.assertEqual(summary["config_echo"]["master_seed"], 5)
        self.assertEqual(summary["passed"], code == EXIT_OK)

        manifest = read_manifest(out)
        self.assertEqual(manifest.schema_version, "1.0")
        self.assertEqual(set(manifest.artifact_hashes), {"records.csv", "summary.json", "plot_median.csv"})
        self.assertEqual(verify_manifest(out), [])

    def test_tampered_artifact_detected(self):
        out = self.path("u")
        self.run_universality(out)
        with open(Path(out, "records.csv"), "a", encoding="utf-8") as handle:
            handle.write("\n")
        self.assertEqual(verify_manifest(out), ["records.csv"])
        os.remove(Path(out, "summary.json"))
        self.assertEqual(verify_manifest(out), ["records.csv", "summary.json"])

    def test_records_reproducible_across_threads(self):
        first, second = self.path("a"), self.path("b")
        self.run_universality(first, "--threads", "1")
        self.run_universality(second, "--threads", "3")
        self.assertEqual(Path(first, "records.csv").read_bytes(), Path(second, "records.csv").read_bytes())

    def test_json_records(self):
        out = self.path("j")
        self.run_universality(out, "--format", "json")
        rows = json.loads(Path(out, "records.json").read_text(encoding="utf-8"))
        self.assertEqual(len(rows), 4)
        self.assertIn("records.json", read_manifest(out).artifact_hashes)

    def test_config_file_with_override(self):
        config_path = self.path("cfg.json")
        cfg = ExperimentConfig(name="universality", N_list=[8], ensemble=EntryLaw.rademacher(),
                               trials=3, master_seed=9)
        save_config(cfg, config_path)
        out = self.path("u")
        code, _ = run_cli("universality", "--config", config_path, "--trials", "5", "--out", out)
        self.assertIn(code, (0, 1))
        self.assertEqual(len(read_records_csv(Path(out, "records.csv"))), 5)
        self.assertEqual(read_manifest(out).config["master_seed"], 9)

    def test_svg_plot(self):
        out = self.path("svg")
        self.run_universality(out, "--svg")
        self.assertTrue(Path(out, "plot_median.svg").exists())
        self.assertIn("plot_median.svg", read_manifest(out).artifact_hashes)


class TestLindebergCommand(CliTestCase):

    def test_swap_run(self):
        out = self.path("l")
        code, _ = run_cli("lindeberg", "--N", "8", "--trials", "2", "--out", out)
        self.assertIn(code, (0, 1))
        summary = json.loads(Path(out, "summary.json").read_text(encoding="utf-8"))
        self.assertIn("delta_hat", summary)
        self.assertEqual(verify_manifest(out), [])

    def test_moment_mismatch_is_usage_error(self):
        code, _ = run_cli("lindeberg", "--N", "8", "--law-y", "gaussian-complex", "--out", self.path("l"))
        self.assertEqual(code, EXIT_USAGE)


class TestVerify(unittest.TestCase):
    """Hızlı doğrulama paketi"""

    def test_quick_suite_passes(self):
        results = run_verify(quick=True)
        failed = [r.as_row() for r in results if not r.passed]
        self.assertEqual(failed, [])
        self.assertIn("round_trip", [r.name for r in results])

    def test_cli_verify(self):
        code, out = run_cli("verify", "--quick")
        self.assertEqual(code, EXIT_OK)
        self.assertIn("PASS", out)


if __name__ == '__main__':
    unittest.main()
