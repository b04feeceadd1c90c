"""
Test initialization file
"""

import os
import sys
import tempfile

# Küçük deneme sayılarına izin ver, önbellek ve logları geçici dizine yaz
os.environ.setdefault("ENVIRONMENT", "testing")
_TMP = tempfile.mkdtemp(prefix="hard-edge-lab-tests-")
os.environ.setdefault("QUANTILE_CACHE_DB", os.path.join(_TMP, "typical_locations.db"))
os.environ.setdefault("LOG_DIR", os.path.join(_TMP, "logs"))
os.environ.setdefault("OUTPUT_DIR", os.path.join(_TMP, "runs"))

# Add parent directory to path for imports
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))
