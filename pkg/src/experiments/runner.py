"""
Paralel deneme yürütücüsü

Her deneme (master_seed, trial) akışına sahiptir; N için ayrı alt akış
türetilir. Sonuçlar bitiş sırasından bağımsız olarak deneme indeksine
göre katlanır.
"""
import logging
import time
from typing import Callable, List, Optional, TypeVar

from ..ensembles import RngStreamSpec
from ..utils import parallel_map
from .config import ExperimentConfig, TrialRecord


T = TypeVar("T")

H_STREAM = 1
G_STREAM = 2
AUGMENT_STREAM = 3
NOISE_STREAM = 4
COUPLED_G_STREAM = 5


class TrialRunner:
    """ThreadPoolExecutor ile denemeleri koşturur"""

    def __init__(self, cfg: ExperimentConfig, logger: Optional[logging.Logger] = None):
        self.cfg = cfg
        self.logger = logger or logging.getLogger(__name__)

    def stream(self, trial: int, N: int) -> RngStreamSpec:
        return RngStreamSpec(master_seed=int(self.cfg.master_seed), stream_id=trial).child(N)

    def map(self, N: int, trial_fn: Callable[[int, RngStreamSpec], T]) -> List[T]:
        """trial_fn(i, akış) sonuçları, i sırasıyla"""
        started = time.time()
        results = parallel_map(lambda i: trial_fn(i, self.stream(i, N)),
                               self.cfg.trials, self.cfg.workers)
        self.logger.info(
            f"✓ {self.cfg.name}: N = {N}, {self.cfg.trials} deneme "
            f"{time.time() - started:.1f} sn'de tamamlandı"
        )
        return results

    def records(self, N: int,
                trial_fn: Callable[[int, RngStreamSpec], List[TrialRecord]]) -> List[TrialRecord]:
        return [record for chunk in self.map(N, trial_fn) for record in chunk]
