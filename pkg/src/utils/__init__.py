"""
Utilities Modülü - Tekrarlı kodu DRY prensibiyle çıkart
"""
import logging
import threading
import time
from concurrent.futures import ThreadPoolExecutor, as_completed
from typing import Any, Callable, Dict, Hashable, List, Optional, Sequence, Tuple, Type
from functools import wraps

import numpy as np

from ..config import get_settings


class CacheManager:
    """İş parçacığı güvenli, süreli bellek içi önbellek

    `ttl_seconds` ya da `enabled` verilmezse değer her çağrıda
    `get_settings().cache` üzerinden okunur (CACHE_TIMEOUT, CACHE_ENABLED).
    """

    def __init__(self, ttl_seconds: Optional[float] = None, enabled: Optional[bool] = None):
        self._entries: Dict[Hashable, Tuple[Any, float]] = {}  # anahtar -> (değer, bitiş)
        self._lock = threading.Lock()
        self._ttl = ttl_seconds
        self._enabled = enabled
        self.hits = 0
        self.misses = 0

    @property
    def ttl(self) -> float:
        return float(get_settings().cache.timeout_seconds if self._ttl is None else self._ttl)

    @property
    def enabled(self) -> bool:
        return get_settings().cache.enabled if self._enabled is None else self._enabled

    def lookup(self, key: Hashable) -> Tuple[bool, Any]:
        """(bulundu mu, değer); süresi dolan kayıt silinir"""
        with self._lock:
            entry = self._entries.get(key)
            if entry is None:
                self.misses += 1
                return False, None
            value, expires_at = entry
            if time.monotonic() >= expires_at:
                del self._entries[key]
                self.misses += 1
                return False, None
            self.hits += 1
            return True, value

    def store(self, key: Hashable, value: Any, ttl: Optional[float] = None) -> None:
        expires_at = time.monotonic() + (self.ttl if ttl is None else ttl)
        with self._lock:
            self._entries[key] = (value, expires_at)

    def clear(self) -> None:
        with self._lock:
            self._entries.clear()
            self.hits = self.misses = 0

    def __len__(self) -> int:
        return len(self._entries)

    def cached(self, ttl: Optional[float] = None):
        """Decorator: hashable argümanlı saf fonksiyonların sonucunu sakla"""
        def decorator(func: Callable):
            @wraps(func)
            def wrapper(*args, **kwargs):
                if not self.enabled:
                    return func(*args, **kwargs)
                key = (func.__qualname__, args, tuple(sorted(kwargs.items())))
                found, value = self.lookup(key)
                if found:
                    return value
                # iki iş parçacığı aynı anda hesaplayabilir; sonuç aynıdır
                value = func(*args, **kwargs)
                self.store(key, value, ttl)
                return value

            wrapper.cache = self  # type: ignore[attr-defined]
            return wrapper
        return decorator


class ErrorHandler:
    """Ortak error handling - DRY prensibiyle hataları yönet"""

    @staticmethod
    def log_errors(logger: logging.Logger, passthrough: Sequence[Type[BaseException]] = ()):
        """Decorator: beklenmeyen hataları logla ve yeniden fırlat

        `passthrough` içindeki hatalar (ör. kullanım hataları) yalnızca
        uyarı seviyesinde loglanır.
        """
        def decorator(func: Callable):
            @wraps(func)
            def wrapper(*args, **kwargs):
                try:
                    return func(*args, **kwargs)
                except tuple(passthrough) as e:
                    logger.warning(f"⚠️ {func.__name__}: {e}")
                    raise
                except Exception as e:
                    logger.error(f"✗ {func.__name__} hatası: {e}", exc_info=True)
                    raise

            return wrapper
        return decorator


class DataValidator:
    """Veri doğrulama - Garbage in, garbage out sorunu çöz"""

    @staticmethod
    def is_positive_int(value: Any) -> bool:
        return isinstance(value, (int, np.integer)) and not isinstance(value, bool) and value > 0

    @staticmethod
    def is_finite_array(values: np.ndarray) -> bool:
        return bool(np.all(np.isfinite(values)))

    @staticmethod
    def is_sorted(values: Sequence[float]) -> bool:
        """Artan sırada mı (eşitlik serbest)"""
        arr = np.asarray(values, dtype=float)
        return bool(np.all(arr[1:] >= arr[:-1]))

    @staticmethod
    def in_range(value: float, low: float, high: float, rel_tol: float = 1e-12) -> bool:
        """Kapalı aralık kontrolü, sınırda göreli tolerans ile"""
        slack = rel_tol * max(abs(low), abs(high), 1.0)
        return low - slack <= value <= high + slack


def parallel_map(func: Callable[[int], Any], count: int, threads: int = 1) -> List[Any]:
    """func(0..count-1) sonuçlarını indeks sırasıyla döndür

    Bitiş sırası ne olursa olsun sonuç listesi indekse göre katlanır.
    """
    if threads <= 1 or count <= 1:
        return [func(i) for i in range(count)]
    results: List[Any] = [None] * count
    with ThreadPoolExecutor(max_workers=threads) as executor:
        futures = {executor.submit(func, i): i for i in range(count)}
        for future in as_completed(futures):
            results[futures[future]] = future.result()
    return results


# Süre ve açık/kapalı durumu CacheConfig üzerinden
global_cache = CacheManager()
