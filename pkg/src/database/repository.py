"""
Tipik Konum Önbelleği (Repository Pattern)
SOLID: SRP - Sadece γ_k dizilerinin kalıcı saklanması

Her satır bir N için γ_1..γ_N dizisini little-endian float64 blob olarak
tutar. Aynı dosyayı paralel denemeler okuyabildiği için WAL günlüğü açılır.
"""
import sqlite3
import logging
from typing import List, Optional

import numpy as np

from ..interfaces import QuantileRepositoryInterface


GAMMA_DTYPE = np.dtype("<f8")


class DatabaseException(Exception):
    """γ deposu açılamadı, okunamadı ya da yazılamadı"""
    pass


class QuantileSchema:
    """typical_locations tablosu şeması"""
    CREATE_TABLE_SQL = '''
        CREATE TABLE IF NOT EXISTS typical_locations (
            n INTEGER PRIMARY KEY,
            gamma BLOB NOT NULL,
            created_at TIMESTAMP DEFAULT CURRENT_TIMESTAMP
        )
    '''

    UPSERT_SQL = '''
        INSERT OR REPLACE INTO typical_locations (n, gamma) VALUES (?, ?)
    '''

    SELECT_BY_N_SQL = "SELECT gamma FROM typical_locations WHERE n = ?"
    SELECT_ALL_N_SQL = "SELECT n FROM typical_locations ORDER BY n"


class DatabaseConnection:
    """Tek işlemlik bağlantı: blok başarılıysa commit, hata varsa rollback"""

    def __init__(self, db_path: str, busy_timeout: float = 30.0):
        self.db_path = db_path
        self.busy_timeout = busy_timeout
        self._conn: Optional[sqlite3.Connection] = None

    def __enter__(self) -> sqlite3.Connection:
        try:
            self._conn = sqlite3.connect(self.db_path, timeout=self.busy_timeout)
            self._conn.execute("PRAGMA journal_mode=WAL")
        except sqlite3.Error as e:
            if self._conn is not None:
                self._conn.close()
                self._conn = None
            raise DatabaseException(f"{self.db_path} açılamadı: {e}") from e
        self._conn.row_factory = sqlite3.Row
        return self._conn

    def __exit__(self, exc_type, exc_val, exc_tb):
        if self._conn is None:
            return False
        try:
            if exc_type is None:
                self._conn.commit()
            else:
                self._conn.rollback()
        finally:
            self._conn.close()
            self._conn = None
        return False


class SQLiteQuantileRepository(QuantileRepositoryInterface):
    """SQLite implementasyonu: N → γ_1..γ_N"""

    def __init__(self, db_path: str, logger: Optional[logging.Logger] = None):
        self.db_path = db_path
        self.logger = logger or logging.getLogger(__name__)
        self._ready = False

    def init_database(self) -> bool:
        """Tabloyu oluştur; başarısızlıkta False"""
        try:
            with DatabaseConnection(self.db_path) as conn:
                conn.execute(QuantileSchema.CREATE_TABLE_SQL)
        except (DatabaseException, sqlite3.Error) as e:
            self.logger.error(f"✗ γ deposu kurulamadı: {e}")
            return False
        self._ready = True
        self.logger.debug(f"✓ γ deposu hazır: {self.db_path}")
        return True

    def _ensure_ready(self) -> None:
        if not self._ready and not self.init_database():
            raise DatabaseException(f"Önbellek başlatılamadı: {self.db_path}")

    def get(self, N: int) -> Optional[np.ndarray]:
        """Kayıtlı γ dizisi; yoksa ya da boyu N değilse None"""
        self._ensure_ready()
        try:
            with DatabaseConnection(self.db_path) as conn:
                row = conn.execute(QuantileSchema.SELECT_BY_N_SQL, (int(N),)).fetchone()
        except sqlite3.Error as e:
            raise DatabaseException(f"γ okuma hatası (N={N}): {e}") from e
        if row is None:
            return None
        blob = bytes(row["gamma"])
        if len(blob) != int(N) * GAMMA_DTYPE.itemsize:
            self.logger.warning(f"⚠️ Bozuk γ kaydı yok sayıldı (N={N}, {len(blob)} bayt)")
            return None
        return np.frombuffer(blob, dtype=GAMMA_DTYPE).astype(np.float64)

    def put(self, N: int, gamma: np.ndarray) -> None:
        self._ensure_ready()
        blob = np.ascontiguousarray(gamma, dtype=GAMMA_DTYPE).tobytes()
        try:
            with DatabaseConnection(self.db_path) as conn:
                conn.execute(QuantileSchema.UPSERT_SQL, (int(N), sqlite3.Binary(blob)))
        except sqlite3.Error as e:
            raise DatabaseException(f"γ yazma hatası (N={N}): {e}") from e
        self.logger.info(f"✓ γ kaydedildi (N={N})")

    def cached_sizes(self) -> List[int]:
        self._ensure_ready()
        try:
            with DatabaseConnection(self.db_path) as conn:
                return [int(row["n"]) for row in conn.execute(QuantileSchema.SELECT_ALL_N_SQL)]
        except sqlite3.Error as e:
            raise DatabaseException(f"γ listesi okunamadı: {e}") from e
