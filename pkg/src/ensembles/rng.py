"""
Deterministik RNG akışları

Her deneme (trial) kendi akışına sahiptir; akış (master_seed, stream_id)
çiftinin saf bir fonksiyonudur. Alt akışlar (ör. H ve G matrisleri,
kompleks sayının reel/sanal kısımları) `child()` ile türetilir.
"""
from dataclasses import dataclass, field, replace
from typing import Any, Dict, Tuple

import numpy as np


DEFAULT_ALGORITHM_LABEL = "PCG64/SeedSequence"
_UINT64_MAX = 2**64 - 1


@dataclass(frozen=True)
class RngStreamSpec:
    """(master_seed, stream_id[, alt yol]) ile tanımlanan bağımsız akış"""
    master_seed: int
    stream_id: int = 0
    algorithm_label: str = DEFAULT_ALGORITHM_LABEL
    path: Tuple[int, ...] = field(default=())

    def __post_init__(self):
        if not 0 <= int(self.master_seed) <= _UINT64_MAX:
            raise ValueError(f"master_seed 64-bit aralığında olmalı: {self.master_seed}")
        if int(self.stream_id) < 0 or any(int(p) < 0 for p in self.path):
            raise ValueError("stream_id ve alt yol negatif olamaz")
        object.__setattr__(self, "path", tuple(int(p) for p in self.path))

    def seed_sequence(self) -> np.random.SeedSequence:
        return np.random.SeedSequence(
            entropy=int(self.master_seed),
            spawn_key=(int(self.stream_id),) + self.path,
        )

    def generator(self) -> np.random.Generator:
        """Her çağrıda aynı başlangıç durumundan yeni bir Generator"""
        return np.random.Generator(np.random.PCG64(self.seed_sequence()))

    def child(self, sub: int) -> "RngStreamSpec":
        """Bu akıştan türetilen bağımsız alt akış"""
        return replace(self, path=self.path + (int(sub),))

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "master_seed": int(self.master_seed),
            "stream_id": int(self.stream_id),
            "algorithm_label": self.algorithm_label,
        }
        if self.path:
            data["path"] = list(self.path)
        return data

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "RngStreamSpec":
        return cls(
            master_seed=int(data["master_seed"]),
            stream_id=int(data.get("stream_id", 0)),
            algorithm_label=data.get("algorithm_label", DEFAULT_ALGORITHM_LABEL),
            path=tuple(data.get("path", ())),
        )


def as_generator(rng: Any) -> np.random.Generator:
    """RngStreamSpec veya hazır Generator kabul et"""
    if isinstance(rng, RngStreamSpec):
        return rng.generator()
    if isinstance(rng, np.random.Generator):
        return rng
    raise TypeError(f"RngStreamSpec veya numpy Generator bekleniyordu: {type(rng)!r}")
