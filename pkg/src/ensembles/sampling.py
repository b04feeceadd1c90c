"""
Matris örnekleme ve varsayım kontrolleri
"""
import logging
import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from .laws import EntryLaw, EnsembleError, draw_standard
from .rng import RngStreamSpec


logger = logging.getLogger(__name__)

TAIL_THRESHOLDS = (2.0, 4.0, 8.0)
MIN_CHECK_SAMPLES = 1000

# Alt akış numaraları (0 kullanılmaz)
REAL_PART_STREAM = 1
IMAG_PART_STREAM = 2


@dataclass(eq=False)
class MatrixSample:
    """M×N rastgele matris, girişler N^{-1/2} ile ölçekli"""
    M: int
    N: int
    entries: np.ndarray
    seed_path: Tuple[int, ...] = ()

    def __post_init__(self):
        if self.entries.shape != (self.M, self.N):
            raise EnsembleError(
                f"Boyut uyuşmazlığı: entries {self.entries.shape}, beklenen ({self.M}, {self.N})"
            )
        if self.M < self.N:
            raise EnsembleError(f"M ≥ N olmalı (M={self.M}, N={self.N})")

    @property
    def is_complex(self) -> bool:
        return np.iscomplexobj(self.entries)

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.M, self.N)

    @classmethod
    def from_array(cls, entries: Any, seed_path: Tuple[int, ...] = ()) -> "MatrixSample":
        arr = np.array(entries, dtype=complex if np.iscomplexobj(entries) else float)
        if arr.ndim != 2:
            raise EnsembleError("Matris 2 boyutlu olmalı")
        M, N = arr.shape
        return cls(M=M, N=N, entries=arr, seed_path=seed_path)

    def with_entries(self, entries: np.ndarray) -> "MatrixSample":
        return MatrixSample(M=entries.shape[0], N=entries.shape[1], entries=entries,
                            seed_path=self.seed_path)

    def same_as(self, other: "MatrixSample") -> bool:
        """Byte düzeyinde eşitlik"""
        return (self.shape == other.shape
                and self.entries.dtype == other.entries.dtype
                and self.entries.tobytes() == other.entries.tobytes())


def _seed_path(rng: RngStreamSpec) -> Tuple[int, ...]:
    return (int(rng.master_seed), int(rng.stream_id)) + rng.path


def draw_entries(law: EntryLaw, size: Tuple[int, int], rng: RngStreamSpec) -> np.ndarray:
    """Ölçeklenmemiş h girişleri; kompleks yasada 1/√2 ölçekli iki bağımsız akış"""
    if law.is_complex:
        re = draw_standard(law, size, rng.child(REAL_PART_STREAM).generator())
        im = draw_standard(law, size, rng.child(IMAG_PART_STREAM).generator())
        return (re + 1j * im) / math.sqrt(2.0)
    return draw_standard(law, size, rng.generator())


def sample_matrix(law: EntryLaw, M: int, N: int, rng: RngStreamSpec) -> MatrixSample:
    """i.i.d. girişli M×N matris, varyans 1/N"""
    law.validate()
    if N < 1 or M < N:
        raise EnsembleError(f"M ≥ N ≥ 1 olmalı (M={M}, N={N})")
    h = draw_entries(law, (M, N), rng)
    return MatrixSample(M=M, N=N, entries=h / math.sqrt(N), seed_path=_seed_path(rng))


@dataclass
class MomentReport:
    """Ampirik momentler, standart hatalar ve kuyruk aşım sayıları"""
    law: EntryLaw
    samples: int
    moments: Tuple[float, float, float, float]
    stderrs: Tuple[float, float, float, float]
    tail_counts: Dict[float, int]
    tail_bounds: Dict[float, float]
    violations: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_dict(self) -> Dict[str, Any]:
        return {
            "law": self.law.to_dict(),
            "samples": self.samples,
            "moments": list(self.moments),
            "stderrs": list(self.stderrs),
            "tail_counts": {str(u): c for u, c in self.tail_counts.items()},
            "tail_bounds": {str(u): b for u, b in self.tail_bounds.items()},
            "violations": list(self.violations),
            "passed": self.passed,
        }


def check_assumptions(law: EntryLaw, samples: int, rng: RngStreamSpec,
                      n_sigma: float = 3.0,
                      logger_: Optional[logging.Logger] = None) -> MomentReport:
    """Moment ve alt-üstel kuyruk varsayımlarını örnekle kontrol et

    Hata fırlatmaz; ihlalleri raporda işaretler.
    """
    log = logger_ or logger
    if samples < MIN_CHECK_SAMPLES:
        raise EnsembleError(f"samples en az {MIN_CHECK_SAMPLES} olmalı: {samples}")

    h = np.asarray(draw_standard(law, samples, rng.generator()), dtype=float)
    violations: List[str] = []

    moments = []
    stderrs = []
    for k in range(1, 5):
        powers = h**k
        m_hat = float(np.mean(powers))
        se = float(np.std(powers, ddof=1) / math.sqrt(samples))
        moments.append(m_hat)
        stderrs.append(se)
        declared = law.moments[k - 1]
        if abs(m_hat - declared) > max(n_sigma * se, 1e-12):
            name = {1: "ortalama", 2: "varyans", 3: "üçüncü moment", 4: "dördüncü moment"}[k]
            violations.append(
                f"m{k} ({name}) ihlali: ampirik {m_hat:.6g}, beyan {declared:.6g}, stderr {se:.3g}"
            )

    tail_counts: Dict[float, int] = {}
    tail_bounds: Dict[float, float] = {}
    for u in TAIL_THRESHOLDS:
        count = int(np.sum(np.abs(h) > u))
        bound = math.exp(-(u**law.theta)) / law.theta
        tail_counts[u] = count
        tail_bounds[u] = bound
        frac = count / samples
        slack = n_sigma * math.sqrt(max(bound * (1.0 - bound), 0.0) / samples)
        if frac > bound + slack:
            violations.append(f"kuyruk ihlali u={u:g}: oran {frac:.3g} > sınır {bound:.3g}")

    report = MomentReport(
        law=law,
        samples=samples,
        moments=tuple(moments),
        stderrs=tuple(stderrs),
        tail_counts=tail_counts,
        tail_bounds=tail_bounds,
        violations=violations,
    )
    if report.passed:
        log.debug(f"✓ {law.label}: varsayımlar sağlandı ({samples} örnek)")
    else:
        log.warning(f"⚠️ {law.label}: {len(violations)} varsayım ihlali")
    return report
