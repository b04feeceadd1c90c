"""
Giriş (entry) dağılımları

EntryLaw, ölçeklenmemiş h değişkeninin (varyans 1) dağılımını ve ilk dört
momentini tanımlar; matris girişleri h/√N'dir. Kompleks yasalarda reel ve
sanal kısımlar aynı taban yasadan bağımsız çekilir ve 1/√2 ile ölçeklenir.
"""
import math
from dataclasses import dataclass, field
from typing import Any, Dict, Optional, Sequence, Tuple

import numpy as np


LAW_KINDS = (
    "gaussian-real",
    "gaussian-complex",
    "rademacher",
    "uniform-symmetric",
    "three-point",
)

MOMENT_TOLERANCE = 1e-9


class EnsembleError(ValueError):
    """Ensemble / moment varsayımı ihlalleri için custom exception"""
    pass


def _realized_moments(atoms: Sequence[float], probs: Sequence[float]) -> Tuple[float, ...]:
    a = np.asarray(atoms, dtype=float)
    p = np.asarray(probs, dtype=float)
    return tuple(float(np.sum(p * a**k)) for k in range(1, 5))


@dataclass(frozen=True)
class EntryLaw:
    """i.i.d. giriş dağılımı: tür, momentler (m1..m4), kuyruk sabiti θ"""
    kind: str
    moments: Tuple[float, float, float, float]
    theta: float = 1.0
    atoms: Optional[Tuple[float, ...]] = None
    probs: Optional[Tuple[float, ...]] = None
    complex_entries: bool = field(default=False)

    def __post_init__(self):
        if self.kind not in LAW_KINDS:
            raise EnsembleError(f"Bilinmeyen yasa türü: {self.kind!r} (geçerli: {', '.join(LAW_KINDS)})")
        object.__setattr__(self, "moments", tuple(float(m) for m in self.moments))
        if len(self.moments) != 4:
            raise EnsembleError("moments tam olarak (m1, m2, m3, m4) olmalı")
        if self.theta <= 0:
            raise EnsembleError(f"theta pozitif olmalı: {self.theta}")
        if self.kind == "gaussian-complex":
            object.__setattr__(self, "complex_entries", True)

        if self.kind == "three-point":
            if self.atoms is None or self.probs is None:
                raise EnsembleError("three-point yasası atoms ve probs gerektirir")
            atoms = tuple(float(a) for a in self.atoms)
            probs = tuple(float(p) for p in self.probs)
            if len(atoms) != len(probs):
                raise EnsembleError("atoms ve probs aynı uzunlukta olmalı")
            if any(p < 0 for p in probs) or abs(sum(probs) - 1.0) > 1e-12:
                raise EnsembleError(f"Olasılıklar negatif olmayan ve toplamı 1 olmalı: {probs}")
            realized = _realized_moments(atoms, probs)
            if any(abs(r - m) > MOMENT_TOLERANCE for r, m in zip(realized, self.moments)):
                raise EnsembleError(
                    f"Beyan edilen momentler {self.moments} atomlarla gerçekleşmiyor: {realized}"
                )
            object.__setattr__(self, "atoms", atoms)
            object.__setattr__(self, "probs", probs)

    # ------------------------------------------------------------------
    # Hazır yasalar
    # ------------------------------------------------------------------
    @classmethod
    def gaussian(cls, complex_entries: bool = False) -> "EntryLaw":
        kind = "gaussian-complex" if complex_entries else "gaussian-real"
        return cls(kind=kind, moments=(0.0, 1.0, 0.0, 3.0))

    @classmethod
    def gaussian_complex(cls) -> "EntryLaw":
        return cls.gaussian(complex_entries=True)

    @classmethod
    def rademacher(cls, complex_entries: bool = False) -> "EntryLaw":
        return cls(kind="rademacher", moments=(0.0, 1.0, 0.0, 1.0), complex_entries=complex_entries)

    @classmethod
    def uniform_symmetric(cls, complex_entries: bool = False) -> "EntryLaw":
        return cls(kind="uniform-symmetric", moments=(0.0, 1.0, 0.0, 9.0 / 5.0),
                   complex_entries=complex_entries)

    @classmethod
    def three_point(cls, atoms: Sequence[float], probs: Sequence[float],
                    complex_entries: bool = False) -> "EntryLaw":
        return cls(kind="three-point", moments=_realized_moments(atoms, probs),
                   atoms=tuple(atoms), probs=tuple(probs), complex_entries=complex_entries)

    @classmethod
    def from_name(cls, name: str) -> "EntryLaw":
        """CLI isimleri: gaussian-real, gaussian-complex, rademacher, rademacher-complex, ..."""
        complex_entries = name.endswith("-complex") and name != "gaussian-complex"
        base = name[: -len("-complex")] if complex_entries else name
        builders = {
            "gaussian-real": lambda: cls.gaussian(),
            "gaussian-complex": lambda: cls.gaussian_complex(),
            "rademacher": lambda: cls.rademacher(complex_entries),
            "uniform-symmetric": lambda: cls.uniform_symmetric(complex_entries),
        }
        if base not in builders:
            raise EnsembleError(f"Bilinmeyen ensemble adı: {name!r}")
        return builders[base]()

    # ------------------------------------------------------------------
    @property
    def is_complex(self) -> bool:
        return self.complex_entries

    @property
    def label(self) -> str:
        if self.complex_entries and self.kind != "gaussian-complex":
            return f"{self.kind}-complex"
        return self.kind

    def validate(self) -> None:
        """Ölçekleme öncesi normalizasyon: m1 = 0, m2 = 1"""
        m1, m2 = self.moments[0], self.moments[1]
        if abs(m1) > MOMENT_TOLERANCE:
            raise EnsembleError(f"Ortalama sıfır olmalı (m1 = {m1})")
        if abs(m2 - 1.0) > MOMENT_TOLERANCE:
            raise EnsembleError(f"Varyans 1 olmalı (m2 = {m2}); girişler h/√N ile ölçeklenir")

    def fourth_moment_gap(self, other: "EntryLaw") -> float:
        return abs(self.moments[3] - other.moments[3])

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "kind": self.kind,
            "moments": list(self.moments),
            "theta": self.theta,
        }
        if self.atoms is not None:
            data["atoms"] = list(self.atoms)
            data["probs"] = list(self.probs or ())
        if self.complex_entries and self.kind != "gaussian-complex":
            data["complex"] = True
        return data

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "EntryLaw":
        try:
            kind = data["kind"]
        except KeyError:
            raise EnsembleError("EntryLaw JSON'unda 'kind' alanı eksik")
        complex_entries = bool(data.get("complex", False))
        moments = data.get("moments")
        if moments is None:
            # Yalnızca tür verilmişse hazır yasayı kullan
            name = f"{kind}-complex" if complex_entries and kind != "gaussian-complex" else kind
            law = cls.from_name(name)
            return law if "theta" not in data else cls(
                kind=law.kind, moments=law.moments, theta=float(data["theta"]),
                atoms=law.atoms, probs=law.probs, complex_entries=law.complex_entries)
        atoms = data.get("atoms")
        probs = data.get("probs")
        return cls(
            kind=kind,
            moments=tuple(moments),
            theta=float(data.get("theta", 1.0)),
            atoms=tuple(atoms) if atoms is not None else None,
            probs=tuple(probs) if probs is not None else None,
            complex_entries=complex_entries,
        )


def draw_standard(law: EntryLaw, size: Any, gen: np.random.Generator) -> np.ndarray:
    """Taban (reel, varyans 1) değişken h'den örnek çek"""
    if law.kind in ("gaussian-real", "gaussian-complex"):
        return gen.standard_normal(size)
    if law.kind == "rademacher":
        return gen.integers(0, 2, size=size).astype(float) * 2.0 - 1.0
    if law.kind == "uniform-symmetric":
        half_width = math.sqrt(3.0)
        return gen.uniform(-half_width, half_width, size=size)
    if law.kind == "three-point":
        return gen.choice(np.asarray(law.atoms), size=size, p=np.asarray(law.probs))
    raise EnsembleError(f"Örnekleyici tanımlı değil: {law.kind}")


def match_first_three_moments(target_fourth_gap: float, direction: str = "below") -> EntryLaw:
    """Gauss ile ilk üç momenti aynı, |m4 − 3| = gap olan simetrik üç noktalı yasa

    Atomlar {−a, 0, a}, olasılıklar {p, 1−2p, p}: m2 = 2pa² = 1, m4 = 2pa⁴ = a²,
    yani a = √m4 ve p = 1/(2·m4).
    """
    if target_fourth_gap < 0:
        raise EnsembleError(f"target_fourth_gap negatif olamaz: {target_fourth_gap}")
    if direction not in ("below", "above"):
        raise EnsembleError(f"direction 'below' veya 'above' olmalı: {direction!r}")

    m4 = 3.0 - target_fourth_gap if direction == "below" else 3.0 + target_fourth_gap
    if m4 < 1.0:
        raise EnsembleError(
            f"Gerçeklenemez hedef: m4 = {m4:g} < 1. Moment kısıtı m4 ≥ m2² = 1 "
            f"(gap en fazla 2 olabilir)"
        )

    a = math.sqrt(m4)
    p = 1.0 / (2.0 * m4)
    if p >= 0.5:
        # m4 = 1: sıfır atomu kaybolur, Rademacher
        return EntryLaw.three_point(atoms=(-a, a), probs=(0.5, 0.5))
    return EntryLaw.three_point(atoms=(-a, 0.0, a), probs=(p, 1.0 - 2.0 * p, p))
