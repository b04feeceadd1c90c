"""
Kalıcılık: konfigürasyon JSON'u, CSV kayıtları, koşu manifestosu

Kayan noktalı sayılar en kısa gidiş-dönüş gösterimiyle (repr) yazılır ve
float_precision="round_trip" ile okunur.
"""
import hashlib
import json
import logging
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Union

import numpy as np
import pandas as pd

from ..config import get_settings
from ..ensembles import DEFAULT_ALGORITHM_LABEL
from ..experiments import CSV_COLUMNS, ExperimentConfig, ExperimentConfigError, TrialRecord


logger = logging.getLogger(__name__)

PathLike = Union[str, Path]

MANIFEST_FILE = "manifest.json"
SUPPORTED_SCHEMAS = ("1.0",)


class ConfigError(ExperimentConfigError):
    """Kullanım hatası; CLI çıkış kodu 2"""


def float_repr(value: float) -> str:
    return repr(float(value))


def _json_default(value: Any) -> Any:
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, (np.bool_,)):
        return bool(value)
    raise TypeError(f"JSON'a çevrilemez: {type(value).__name__}")


def write_json(data: Dict[str, Any], path: PathLike) -> Path:
    path = Path(path)
    path.write_text(json.dumps(data, indent=2, sort_keys=True, default=_json_default) + "\n",
                    encoding="utf-8")
    return path


# ------------------------------------------------------------------
# Konfigürasyon
# ------------------------------------------------------------------
def load_config(path: PathLike) -> ExperimentConfig:
    """JSON dosyasından ExperimentConfig; şema ihlalinde alan yolu ile ConfigError"""
    path = Path(path)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise ConfigError(f"dosya bulunamadı: {path}", "--config")
    except json.JSONDecodeError as e:
        raise ConfigError(f"geçersiz JSON ({e.msg}, satır {e.lineno})", "--config")
    try:
        return ExperimentConfig.from_dict(data)
    except ExperimentConfigError as e:
        raise ConfigError(str(e).split(": ", 1)[-1], e.field)


def save_config(cfg: ExperimentConfig, path: PathLike) -> Path:
    return write_json(cfg.to_dict(), path)


# ------------------------------------------------------------------
# CSV kayıtları
# ------------------------------------------------------------------
def write_frame_csv(frame: pd.DataFrame, path: PathLike) -> Path:
    path = Path(path)
    frame.to_csv(path, index=False, float_format=float_repr, lineterminator="\n")
    return path


def read_frame_csv(path: PathLike) -> pd.DataFrame:
    return pd.read_csv(path, float_precision="round_trip")


def write_records_csv(records: Sequence[TrialRecord], path: PathLike) -> Path:
    frame = pd.DataFrame([r.to_row() for r in records], columns=CSV_COLUMNS)
    return write_frame_csv(frame, path)


def read_records_csv(path: PathLike) -> List[TrialRecord]:
    frame = read_frame_csv(path)
    if list(frame.columns) != CSV_COLUMNS:
        raise ConfigError(f"beklenmeyen CSV başlığı: {','.join(frame.columns)}", str(path))
    return [TrialRecord.from_row(row) for row in frame.to_dict(orient="records")]


def write_records_json(records: Sequence[TrialRecord], path: PathLike) -> Path:
    path = Path(path)
    rows = [{k: (float_repr(v) if isinstance(v, float) else v) for k, v in r.to_row().items()}
            for r in records]
    path.write_text(json.dumps(rows, indent=1) + "\n", encoding="utf-8")
    return path


# ------------------------------------------------------------------
# Çıktı dizini
# ------------------------------------------------------------------
def prepare_output_dir(path: PathLike, force: bool = False) -> Path:
    """Koşu dizinini hazırla; dolu dizin yalnızca --force ile yeniden kullanılır"""
    path = Path(path)
    if path.exists() and any(path.iterdir()):
        if not force:
            raise ConfigError(f"{path} zaten var; üzerine yazmak için --force kullanın", "--out")
        logger.warning(f"⚠️ {path} üzerine yazılacak (--force)")
    path.mkdir(parents=True, exist_ok=True)
    return path


# ------------------------------------------------------------------
# Manifesto
# ------------------------------------------------------------------
def file_hash(path: PathLike) -> str:
    digest = hashlib.sha256(Path(path).read_bytes()).hexdigest()
    return f"sha256:{digest}"


def _now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


@dataclass
class RunManifest:
    """Bir koşunun kaynağı: konfigürasyon, zaman damgaları, yapıt özetleri"""
    config: Dict[str, Any]
    schema_version: str = field(default_factory=lambda: get_settings().output.schema_version)
    started_at: str = field(default_factory=_now)
    finished_at: Optional[str] = None
    artifact_hashes: Dict[str, str] = field(default_factory=dict)
    rng_algorithm_label: str = DEFAULT_ALGORITHM_LABEL
    settings: Dict[str, Any] = field(default_factory=lambda: get_settings().get_config_summary())

    def record_artifacts(self, directory: PathLike, names: Sequence[str]) -> None:
        directory = Path(directory)
        for name in names:
            self.artifact_hashes[name] = file_hash(directory / name)

    def finish(self) -> None:
        self.finished_at = _now()

    def to_dict(self) -> Dict[str, Any]:
        return {
            "schema_version": self.schema_version,
            "config": self.config,
            "started_at": self.started_at,
            "finished_at": self.finished_at,
            "artifact_hashes": dict(sorted(self.artifact_hashes.items())),
            "rng_algorithm_label": self.rng_algorithm_label,
            "settings": self.settings,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "RunManifest":
        version = data.get("schema_version")
        if version not in SUPPORTED_SCHEMAS:
            raise ConfigError(f"desteklenmeyen şema sürümü {version!r}", "schema_version")
        return cls(
            config=data["config"],
            schema_version=version,
            started_at=data["started_at"],
            finished_at=data.get("finished_at"),
            artifact_hashes=dict(data.get("artifact_hashes", {})),
            rng_algorithm_label=data.get("rng_algorithm_label", DEFAULT_ALGORITHM_LABEL),
            settings=data.get("settings", {}),
        )


def write_manifest(manifest: RunManifest, directory: PathLike) -> Path:
    path = write_json(manifest.to_dict(), Path(directory) / MANIFEST_FILE)
    logger.info(f"✓ Manifesto yazıldı: {path}")
    return path


def read_manifest(directory: PathLike) -> RunManifest:
    path = Path(directory) / MANIFEST_FILE
    try:
        return RunManifest.from_dict(json.loads(path.read_text(encoding="utf-8")))
    except FileNotFoundError:
        raise ConfigError(f"manifesto yok: {path}", "--out")


def verify_manifest(directory: PathLike) -> List[str]:
    """Özeti tutmayan ya da eksik yapıtların listesi (boş liste = geçerli)"""
    directory = Path(directory)
    manifest = read_manifest(directory)
    bad = []
    for name, expected in manifest.artifact_hashes.items():
        target = directory / name
        if not target.exists() or file_hash(target) != expected:
            bad.append(name)
    if bad:
        logger.warning(f"⚠️ Manifesto uyuşmazlığı: {bad}")
    return bad
