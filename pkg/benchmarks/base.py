"""
Base Model - 所有基準回應模型共用的基礎類別

模型接收物理值矩陣 (n, k)，回傳回應矩陣 (n, r)。
"""
from abc import ABC, abstractmethod
from typing import List

import numpy as np

from errors import DomainError
from models import DomainSpec


class ResponseModel(ABC):
    """
    回應模型基礎類別

    子類別需提供：
    - model_id: 模型識別名稱
    - response_names: 回應分量名稱（例如 ["z"] 或 ["w", "d", "s"]）
    - domain: 模型的離散設計空間
    - _evaluate(): 向量化的計算
    """

    model_id: str
    response_names: List[str]

    @property
    @abstractmethod
    def domain(self) -> DomainSpec:
        ...

    @property
    def k(self) -> int:
        return self.domain.k

    @abstractmethod
    def _evaluate(self, values: np.ndarray) -> np.ndarray:
        ...

    def evaluate(self, values: np.ndarray) -> np.ndarray:
        """
        計算 (n, k) 物理值的回應

        Returns:
            np.ndarray: (n, r) 回應矩陣

        Raises:
            DomainError: 輸入欄數與模型維度不符
        """
        values = np.atleast_2d(np.asarray(values, dtype=float))
        if values.shape[1] != self.k:
            raise DomainError(
                f"{self.model_id}: expected {self.k} input columns, got {values.shape[1]}"
            )
        out = np.asarray(self._evaluate(values), dtype=float)
        return out.reshape(values.shape[0], len(self.response_names))

    def evaluate_indices(self, points: np.ndarray) -> np.ndarray:
        """以 level index 計算回應"""
        return self.evaluate(self.domain.physical(np.asarray(points)))

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.model_id!r})"
