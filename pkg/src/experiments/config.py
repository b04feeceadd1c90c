"""
Deney konfigürasyonu, deneme kayıtları ve özet istatistikler
"""
import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from ..config import get_settings
from ..ensembles import EnsembleError, EntryLaw
from ..utils import DataValidator


M_OFFSETS = ("zero", "log")
REQUIRED_FIELDS = ("name", "N_list", "ensemble", "trials", "master_seed")

CSV_COLUMNS = [
    "experiment", "N", "M", "ensemble", "param", "trial", "seed",
    "sigma1", "sigmaN", "kappa", "aux1", "aux2",
]


class ExperimentConfigError(ValueError):
    """Konfigürasyon şeması ihlali; `field` hatalı alanın yolu"""

    def __init__(self, message: str, field_path: str = ""):
        super().__init__(f"{field_path}: {message}" if field_path else message)
        self.field = field_path


def _default_knobs() -> Dict[str, float]:
    calibration = get_settings().calibration
    return {"epsilon": calibration.epsilon, "delta": calibration.delta}


@dataclass
class ExperimentConfig:
    """Yeniden üretilebilir bir Monte Carlo koşusunun tam tanımı"""
    name: str
    N_list: List[int]
    ensemble: EntryLaw
    trials: int
    master_seed: int
    M_offset: str = "zero"
    lambda_or_t_grid: List[float] = field(default_factory=list)
    r_grid: List[float] = field(default_factory=list)
    epsilon_knobs: Dict[str, float] = field(default_factory=_default_knobs)
    output_path: str = ""
    dt: Optional[float] = None
    threads: Optional[int] = None

    def __post_init__(self):
        if not self.name:
            raise ExperimentConfigError("boş olamaz", "name")
        if not self.N_list or not all(DataValidator.is_positive_int(n) for n in self.N_list):
            raise ExperimentConfigError("pozitif tamsayı listesi olmalı", "N_list")
        if list(self.N_list) != sorted(self.N_list):
            raise ExperimentConfigError("artan sırada olmalı", "N_list")
        minimum = get_settings().experiments.min_trials
        if not DataValidator.is_positive_int(self.trials) or self.trials < minimum:
            raise ExperimentConfigError(f"en az {minimum} olmalı (verilen {self.trials})", "trials")
        if self.M_offset not in M_OFFSETS:
            raise ExperimentConfigError(f"{M_OFFSETS} içinden olmalı", "M_offset")
        if not 0 <= int(self.master_seed) < 2**64:
            raise ExperimentConfigError("64-bit işaretsiz tamsayı olmalı", "master_seed")
        knobs = _default_knobs()
        knobs.update(self.epsilon_knobs)
        self.epsilon_knobs = knobs
        if not 0.0 < knobs["delta"] < 1.0:
            raise ExperimentConfigError("δ ∈ (0, 1) olmalı", "epsilon_knobs.delta")
        if knobs["epsilon"] <= 0:
            raise ExperimentConfigError("ε > 0 olmalı", "epsilon_knobs.epsilon")

    @property
    def epsilon(self) -> float:
        return float(self.epsilon_knobs["epsilon"])

    @property
    def delta(self) -> float:
        return float(self.epsilon_knobs["delta"])

    @property
    def step(self) -> float:
        return self.dt if self.dt is not None else get_settings().simulation.dt_max

    @property
    def workers(self) -> int:
        return self.threads if self.threads is not None else get_settings().experiments.default_threads

    def M_for(self, N: int) -> int:
        if self.M_offset == "log":
            return N + int(math.ceil(math.log(N))) if N > 1 else N
        return N

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "name": self.name,
            "N_list": list(self.N_list),
            "M_offset": self.M_offset,
            "ensemble": self.ensemble.to_dict(),
            "lambda_or_t_grid": list(self.lambda_or_t_grid),
            "r_grid": list(self.r_grid),
            "trials": self.trials,
            "master_seed": int(self.master_seed),
            "epsilon_knobs": dict(self.epsilon_knobs),
            "output_path": self.output_path,
        }
        if self.dt is not None:
            data["dt"] = self.dt
        if self.threads is not None:
            data["threads"] = self.threads
        return data

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "ExperimentConfig":
        if not isinstance(data, dict):
            raise ExperimentConfigError("JSON nesnesi bekleniyordu")
        for name in REQUIRED_FIELDS:
            if name not in data:
                raise ExperimentConfigError("zorunlu alan eksik", name)
        unknown = set(data) - {f for f in cls.__dataclass_fields__}
        if unknown:
            raise ExperimentConfigError("bilinmeyen alan", sorted(unknown)[0])

        raw_law = data["ensemble"]
        try:
            law = EntryLaw.from_name(raw_law) if isinstance(raw_law, str) else EntryLaw.from_dict(raw_law)
        except (EnsembleError, TypeError, AttributeError) as e:
            raise ExperimentConfigError(str(e), "ensemble")

        def as_list(key: str, kind: type) -> List[Any]:
            value = data.get(key, [])
            if not isinstance(value, list):
                raise ExperimentConfigError("liste olmalı", key)
            try:
                return [kind(v) for v in value]
            except (TypeError, ValueError):
                raise ExperimentConfigError(f"{kind.__name__} listesi olmalı", key)

        n_list = data["N_list"]
        if not isinstance(n_list, list) or not all(isinstance(n, int) for n in n_list):
            raise ExperimentConfigError("tamsayı listesi olmalı", "N_list")
        if not isinstance(data["trials"], int):
            raise ExperimentConfigError("tamsayı olmalı", "trials")
        if not isinstance(data["master_seed"], int):
            raise ExperimentConfigError("tamsayı olmalı", "master_seed")

        return cls(
            name=str(data["name"]),
            N_list=list(n_list),
            ensemble=law,
            trials=data["trials"],
            master_seed=data["master_seed"],
            M_offset=data.get("M_offset", "zero"),
            lambda_or_t_grid=as_list("lambda_or_t_grid", float),
            r_grid=as_list("r_grid", float),
            epsilon_knobs={str(k): float(v) for k, v in data.get("epsilon_knobs", {}).items()},
            output_path=str(data.get("output_path", "")),
            dt=float(data["dt"]) if "dt" in data else None,
            threads=int(data["threads"]) if "threads" in data else None,
        )

    def __eq__(self, other: object) -> bool:
        return isinstance(other, ExperimentConfig) and self.to_dict() == other.to_dict()


@dataclass
class TrialRecord:
    """CSV'nin bir satırı"""
    experiment: str
    N: int
    M: int
    ensemble: str
    param: float
    trial: int
    seed: int
    sigma1: float
    sigmaN: float
    kappa: float
    aux1: float = math.nan
    aux2: float = math.nan

    def __post_init__(self):
        if self.sigma1 > self.sigmaN:
            raise ExperimentConfigError(f"σ₁ ≤ σ_N olmalı: {self.sigma1} > {self.sigmaN}", "sigma1")

    def kappa_consistent(self, rel_tol: float = 1e-12) -> bool:
        if self.sigma1 == 0:
            return math.isinf(self.kappa)
        return math.isclose(self.kappa, self.sigmaN / self.sigma1, rel_tol=rel_tol)

    def to_row(self) -> Dict[str, Any]:
        return {column: getattr(self, column) for column in CSV_COLUMNS}

    @classmethod
    def from_row(cls, row: Dict[str, Any]) -> "TrialRecord":
        return cls(
            experiment=str(row["experiment"]),
            N=int(row["N"]),
            M=int(row["M"]),
            ensemble=str(row["ensemble"]),
            param=float(row["param"]),
            trial=int(row["trial"]),
            seed=int(row["seed"]),
            sigma1=float(row["sigma1"]),
            sigmaN=float(row["sigmaN"]),
            kappa=float(row["kappa"]),
            aux1=float(row["aux1"]),
            aux2=float(row["aux2"]),
        )


@dataclass
class SummaryStats:
    """JSON özeti: quantiles, ks, slopes, margins, calibration_constants"""
    experiment: str
    quantiles: Dict[str, Dict[str, float]] = field(default_factory=dict)
    ks: Dict[str, float] = field(default_factory=dict)
    slopes: Dict[str, Dict[str, float]] = field(default_factory=dict)
    margins: Dict[str, float] = field(default_factory=dict)
    calibration_constants: Dict[str, float] = field(default_factory=dict)
    config_echo: Dict[str, Any] = field(default_factory=dict)
    checks: Dict[str, bool] = field(default_factory=dict)
    extras: Dict[str, Any] = field(default_factory=dict)
    records: List["TrialRecord"] = field(default_factory=list, repr=False)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def failed_checks(self) -> List[str]:
        return [name for name, ok in self.checks.items() if not ok]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "experiment": self.experiment,
            "config_echo": self.config_echo,
            "quantiles": self.quantiles,
            "ks": self.ks,
            "slopes": self.slopes,
            "margins": self.margins,
            "calibration_constants": self.calibration_constants,
            "checks": self.checks,
            "passed": self.passed,
            "extras": self.extras,
        }
