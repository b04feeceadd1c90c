"""
Konfigürasyon, logging ve yardımcı araç testleri
"""

import json
import logging
import os
import tempfile
import time
import unittest
from pathlib import Path
from unittest import mock

from src.config import get_settings, reset_settings
from src.utils import CacheManager, DataValidator, ErrorHandler, parallel_map


class TestSettings(unittest.TestCase):
    """Settings singleton ve ortam değişkenleri"""

    def tearDown(self):
        reset_settings()

    def test_singleton(self):
        self.assertIs(get_settings(), get_settings())

    def test_testing_environment_lowers_min_trials(self):
        with mock.patch.dict(os.environ, {"ENVIRONMENT": "testing"}):
            os.environ.pop("MIN_TRIALS", None)
            reset_settings()
            self.assertEqual(get_settings().experiments.min_trials, 2)

    def test_default_knobs(self):
        with mock.patch.dict(os.environ, {}, clear=False):
            for name in ("EPSILON_KNOB", "DELTA_KNOB"):
                os.environ.pop(name, None)
            reset_settings()
            calibration = get_settings().calibration
            self.assertEqual(calibration.epsilon, 0.2)
            self.assertEqual(calibration.delta, 0.5)

    def test_env_override(self):
        with mock.patch.dict(os.environ, {"DBM_DT_MAX": "5e-4", "RELAXATION_CONSTANT": "12.5"}):
            reset_settings()
            settings = get_settings()
            self.assertEqual(settings.simulation.dt_max, 5e-4)
            self.assertEqual(settings.calibration.relaxation_constant, 12.5)

    def test_config_summary_is_json_serializable(self):
        summary = get_settings().get_config_summary()
        self.assertIn("calibration", summary)
        self.assertEqual(summary["schema_version"], "1.0")
        json.dumps(summary)


class TestLoggerSetup(unittest.TestCase):
    """Rotating JSON file handler kurulumu"""

    def setUp(self):
        self.temp_dir = tempfile.mkdtemp()
        self.env = mock.patch.dict(os.environ, {"LOG_DIR": self.temp_dir, "LOG_JSON": "true"})
        self.env.start()
        reset_settings()

    def tearDown(self):
        self.env.stop()
        reset_settings()

    def test_handlers_added_once(self):
        from logger import LoggerSetup

        name = f"hel-test-{time.time_ns()}"
        logger = LoggerSetup.get_logger(name)
        count = len(logger.handlers)
        self.assertIs(LoggerSetup.get_logger(name), logger)
        self.assertEqual(len(logger.handlers), count)
        self.assertEqual(count, 2)

    def test_json_lines_written(self):
        from logger import LoggerSetup

        name = f"hel-json-{time.time_ns()}"
        logger = LoggerSetup.get_logger(name, level="INFO")
        logger.info("✓ deneme")
        for handler in logger.handlers:
            handler.flush()
        lines = (Path(self.temp_dir) / f"{name}.log").read_text(encoding="utf-8").splitlines()
        record = json.loads(lines[-1])
        self.assertEqual(record["message"], "✓ deneme")
        self.assertEqual(record["levelname"], "INFO")
        for handler in list(logger.handlers):
            handler.close()
            logger.removeHandler(handler)


class TestUtils(unittest.TestCase):
    """CacheManager, DataValidator, ErrorHandler, parallel_map"""

    def test_cache_decorator(self):
        cache = CacheManager(ttl_seconds=60)
        calls = []

        @cache.cached()
        def square(x):
            calls.append(x)
            return x * x

        self.assertEqual(square(3), 9)
        self.assertEqual(square(3), 9)
        self.assertEqual(calls, [3])
        cache.clear()
        square(3)
        self.assertEqual(calls, [3, 3])

    def test_cache_disabled(self):
        cache = CacheManager(enabled=False)
        calls = []

        @cache.cached()
        def ident(x):
            calls.append(x)
            return x

        ident(1)
        ident(1)
        self.assertEqual(len(calls), 2)

    def test_cache_counters_and_expiry(self):
        cache = CacheManager(ttl_seconds=0)
        calls = []

        @cache.cached()
        def scaled(x, factor=1):
            calls.append((x, factor))
            return x * factor

        scaled(2, factor=3)
        scaled(2, factor=3)
        self.assertEqual(len(calls), 2)
        self.assertEqual((cache.hits, cache.misses), (0, 2))

        cache = CacheManager(ttl_seconds=60)
        cached_scaled = cache.cached()(lambda x, factor=1: x * factor)
        cached_scaled(2, factor=3)
        cached_scaled(2, factor=3)
        cached_scaled(2, factor=4)
        self.assertEqual((cache.hits, cache.misses, len(cache)), (1, 2, 2))

    def test_cache_follows_settings(self):
        cache = CacheManager()
        with mock.patch.dict(os.environ, {"CACHE_ENABLED": "false", "CACHE_TIMEOUT": "7"}):
            reset_settings()
            try:
                self.assertFalse(cache.enabled)
                self.assertEqual(cache.ttl, 7.0)
            finally:
                reset_settings()

    def test_validator(self):
        self.assertTrue(DataValidator.is_positive_int(3))
        self.assertFalse(DataValidator.is_positive_int(True))
        self.assertFalse(DataValidator.is_positive_int(0))
        self.assertTrue(DataValidator.is_sorted([1.0, 1.0, 2.0]))
        self.assertFalse(DataValidator.is_sorted([2.0, 1.0]))
        self.assertTrue(DataValidator.in_range(1.0 + 1e-14, 0.0, 1.0))
        self.assertFalse(DataValidator.in_range(1.1, 0.0, 1.0))

    def test_error_handler_reraises(self):
        logger = logging.getLogger("hel-error-handler")

        @ErrorHandler.log_errors(logger, passthrough=(KeyError,))
        def broken(kind):
            raise kind("x")

        with self.assertLogs(logger, level="WARNING") as logs:
            with self.assertRaises(KeyError):
                broken(KeyError)
        self.assertTrue(any("⚠️" in line for line in logs.output))
        with self.assertLogs(logger, level="ERROR"):
            with self.assertRaises(RuntimeError):
                broken(RuntimeError)

    def test_parallel_map_order(self):
        def slow(i):
            time.sleep(0.001 * (5 - i))
            return i * 10

        self.assertEqual(parallel_map(slow, 5, threads=4), [0, 10, 20, 30, 40])
        self.assertEqual(parallel_map(slow, 5, threads=1), [0, 10, 20, 30, 40])


if __name__ == '__main__':
    unittest.main()
