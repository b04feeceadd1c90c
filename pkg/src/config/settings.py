"""
Merkezi Konfigürasyon Yönetimi
Tüm sayısal düğmeler (ε, δ, dt sınırları, kalibrasyon sabitleri) bir yerde
"""
import os
from pathlib import Path
from dataclasses import dataclass, field
from typing import Any, Dict, Optional
from dotenv import load_dotenv


# .env dosyasını yükle
BASE_DIR = Path(__file__).resolve().parent.parent.parent
ENV_FILE = BASE_DIR / ".env"
load_dotenv(ENV_FILE)


def _env_float(name: str, default: str) -> float:
    return float(os.getenv(name, default))


def _env_int(name: str, default: str) -> int:
    return int(os.getenv(name, default))


def _env_bool(name: str, default: str) -> bool:
    return os.getenv(name, default).lower() == "true"


@dataclass
class SimulationConfig:
    """DBM / OU entegratör ayarları"""
    dt_max: float = field(default_factory=lambda: _env_float("DBM_DT_MAX", "1e-3"))
    max_halvings: int = field(default_factory=lambda: _env_int("DBM_MAX_HALVINGS", "20"))
    guard_factor: float = field(default_factory=lambda: _env_float("DBM_GUARD_FACTOR", "0.1"))
    fd_step: float = field(default_factory=lambda: _env_float("PHI_FD_STEP", "1e-3"))
    gamma_imag_offset: float = field(
        default_factory=lambda: _env_float("GAMMA_IMAG_OFFSET", "1e-9")
    )
    hs_y_floor: float = field(default_factory=lambda: _env_float("HS_Y_FLOOR", "1e-8"))


@dataclass
class CalibrationConfig:
    """≺ yüzey ölçütleri için ε/δ düğmeleri ve donmuş kalibrasyon sabitleri"""
    epsilon: float = field(default_factory=lambda: _env_float("EPSILON_KNOB", "0.2"))
    delta: float = field(default_factory=lambda: _env_float("DELTA_KNOB", "0.5"))
    budget_constant: float = field(default_factory=lambda: _env_float("BUDGET_CONSTANT", "1.0"))
    smoothed_constant: float = field(
        default_factory=lambda: _env_float("SMOOTHED_CONSTANT", "50.0")
    )
    condition_constant: float = field(
        default_factory=lambda: _env_float("CONDITION_CONSTANT", "50.0")
    )
    relaxation_constant: float = field(
        default_factory=lambda: _env_float("RELAXATION_CONSTANT", "50.0")
    )

    def as_dict(self) -> Dict[str, float]:
        return {
            "epsilon": self.epsilon,
            "delta": self.delta,
            "budget_constant": self.budget_constant,
            "smoothed_constant": self.smoothed_constant,
            "condition_constant": self.condition_constant,
            "relaxation_constant": self.relaxation_constant,
        }


@dataclass
class ExperimentsConfig:
    """Monte Carlo koşu ayarları"""
    environment: str = field(default_factory=lambda: os.getenv("ENVIRONMENT", "development"))
    default_threads: int = field(default_factory=lambda: _env_int("DEFAULT_THREADS", "4"))
    min_trials: int = field(default=100)

    def __post_init__(self):
        # Test ortamında küçük koşulara izin ver
        configured = os.getenv("MIN_TRIALS")
        if configured is not None:
            self.min_trials = int(configured)
        elif self.is_testing:
            self.min_trials = 2

    @property
    def is_testing(self) -> bool:
        return self.environment == "testing"


@dataclass
class CacheConfig:
    """Cache Ayarları"""
    enabled: bool = field(default_factory=lambda: _env_bool("CACHE_ENABLED", "true"))
    timeout_seconds: int = field(default_factory=lambda: _env_int("CACHE_TIMEOUT", "3600"))
    quantile_db: str = field(
        default_factory=lambda: os.getenv("QUANTILE_CACHE_DB", "typical_locations.db")
    )


@dataclass
class LoggingConfig:
    """Logging Konfigürasyonu"""
    level: str = field(default_factory=lambda: os.getenv("LOG_LEVEL", "INFO"))
    dir_path: Path = field(default_factory=lambda: Path(os.getenv("LOG_DIR", "logs")))
    json_files: bool = field(default_factory=lambda: _env_bool("LOG_JSON", "true"))
    max_bytes: int = field(default_factory=lambda: _env_int("LOG_MAX_BYTES", str(10 * 1024 * 1024)))
    backup_count: int = field(default_factory=lambda: _env_int("LOG_BACKUPS", "5"))

    def ensure_dir(self) -> Path:
        """Log klasörünü oluştur"""
        self.dir_path.mkdir(parents=True, exist_ok=True)
        return self.dir_path


@dataclass
class OutputConfig:
    """Çıktı dizini ve şema sürümü"""
    root: Path = field(default_factory=lambda: Path(os.getenv("OUTPUT_DIR", "runs")))
    schema_version: str = "1.0"


class Settings:
    """Ana Konfigürasyon Sınıfı - Singleton Pattern"""

    def __init__(self):
        self.simulation = SimulationConfig()
        self.calibration = CalibrationConfig()
        self.experiments = ExperimentsConfig()
        self.cache = CacheConfig()
        self.logging = LoggingConfig()
        self.output = OutputConfig()

    def get_config_summary(self) -> Dict[str, Any]:
        """Konfigürasyon özetini döndür (manifestlere yazılır)"""
        return {
            "environment": self.experiments.environment,
            "simulation": {
                "dt_max": self.simulation.dt_max,
                "max_halvings": self.simulation.max_halvings,
                "guard_factor": self.simulation.guard_factor,
                "fd_step": self.simulation.fd_step,
            },
            "calibration": self.calibration.as_dict(),
            "cache_enabled": self.cache.enabled,
            "schema_version": self.output.schema_version,
        }


# Singleton instance
_settings_instance: Optional[Settings] = None


def get_settings() -> Settings:
    """Settings singleton'ı al"""
    global _settings_instance
    if _settings_instance is None:
        _settings_instance = Settings()
    return _settings_instance


def reset_settings() -> None:
    """Ortam değişkenleri değiştiğinde singleton'ı yeniden kur"""
    global _settings_instance
    _settings_instance = None
