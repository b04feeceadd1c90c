"""
Tipik konum deposu testleri
"""

import os
import shutil
import tempfile
import unittest

import numpy as np

from src.database import DatabaseException, SQLiteQuantileRepository


class TestQuantileRepository(unittest.TestCase):
    """SQLite γ deposu"""

    def setUp(self):
        self.temp_dir = tempfile.mkdtemp()
        self.repo = SQLiteQuantileRepository(os.path.join(self.temp_dir, "test.db"))

    def tearDown(self):
        shutil.rmtree(self.temp_dir, ignore_errors=True)

    def test_init_database(self):
        self.assertTrue(self.repo.init_database())
        self.assertEqual(self.repo.cached_sizes(), [])

    def test_put_get(self):
        gamma = np.linspace(0.1, 2.0, 7)
        self.repo.put(7, gamma)
        np.testing.assert_array_equal(self.repo.get(7), gamma)
        self.assertIsNone(self.repo.get(8))

    def test_overwrite(self):
        self.repo.put(3, np.array([0.5, 1.0, 2.0]))
        self.repo.put(3, np.array([0.6, 1.1, 2.0]))
        np.testing.assert_array_equal(self.repo.get(3), [0.6, 1.1, 2.0])
        self.repo.put(1, np.array([2.0]))
        self.assertEqual(self.repo.cached_sizes(), [1, 3])

    def test_wrong_length_record_ignored(self):
        self.repo.put(4, np.array([0.5, 1.0, 2.0]))
        self.assertIsNone(self.repo.get(4))
        self.assertEqual(self.repo.cached_sizes(), [4])

    def test_unreachable_path(self):
        repo = SQLiteQuantileRepository(os.path.join(self.temp_dir, "missing", "dir", "x.db"))
        self.assertFalse(repo.init_database())
        with self.assertRaises(DatabaseException):
            repo.get(3)


if __name__ == '__main__':
    unittest.main()
