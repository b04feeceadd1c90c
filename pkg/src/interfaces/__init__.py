"""
Bileşenler İçin Interface Tanımları
SOLID: Dependency Inversion Principle
"""
from abc import ABC, abstractmethod
from typing import Any, Optional

import numpy as np


class SmoothFunctionInterface(ABC):
    """C² test fonksiyonu interface'i - değer ve ilk iki türev"""

    @abstractmethod
    def value(self, x: Any) -> np.ndarray:
        """f(x), vektörize"""
        pass

    @abstractmethod
    def first(self, x: Any) -> np.ndarray:
        """f'(x)"""
        pass

    @abstractmethod
    def second(self, x: Any) -> np.ndarray:
        """f''(x)"""
        pass

    @abstractmethod
    def support_radius(self) -> float:
        """|x| bu değerin üstündeyse f(x) = 0"""
        pass


class QuantileRepositoryInterface(ABC):
    """Tipik konumların (γ_k) kalıcı deposu"""

    @abstractmethod
    def init_database(self) -> bool:
        """Depoyu başlat"""
        pass

    @abstractmethod
    def get(self, N: int) -> Optional[np.ndarray]:
        """N için pozitif γ_1..γ_N dizisi; yoksa None"""
        pass

    @abstractmethod
    def put(self, N: int, gamma: np.ndarray) -> None:
        """N için γ dizisini kaydet"""
        pass


class ExperimentInterface(ABC):
    """Monte Carlo deney interface'i - yeni deney eklemek kolay"""

    name: str = "experiment"

    @abstractmethod
    def run(self, cfg: Any) -> Any:
        """Deneyi çalıştır; kayıtları `records` alanında taşıyan SummaryStats döndür"""
        pass
