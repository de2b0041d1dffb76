"""
Space-filling 準則：AE（Audze-Eglais 位能）、EMM（最小距離最大化）、ML2（修正 L2 discrepancy）
"""
import math
from typing import Optional

import numpy as np

from errors import DegenerateDesignError, DomainError
from models import CriterionId, Design, DistanceScale, DomainSpec
from doe.core import normalize_unit, pairwise_sq_distances
from .registry import criterion


@criterion(CriterionId.AE)
def eval_ae(
    design: Design,
    domain: Optional[DomainSpec] = None,
    scale: DistanceScale = DistanceScale.INDEX,
    strict: bool = False
) -> float:
    """
    Σ_{i<j} 1 / L²_ij

    重複點的位能為無限大：預設回傳 +inf，strict=True 時拋出例外。

    Raises:
        DegenerateDesignError: strict 模式下有重複點
    """
    d2 = pairwise_sq_distances(design, domain, scale)
    if np.any(d2 == 0):
        if strict:
            raise DegenerateDesignError("Duplicate points give infinite AE energy")
        return math.inf
    return float(np.sum(1.0 / d2))


@criterion(CriterionId.EMM)
def eval_emm(
    design: Design,
    domain: Optional[DomainSpec] = None,
    scale: DistanceScale = DistanceScale.INDEX
) -> float:
    """負的最小兩兩距離；有重複點時為 0（最差值）"""
    smallest = float(np.min(pairwise_sq_distances(design, domain, scale)))
    return -math.sqrt(smallest) if smallest > 0 else 0.0


@criterion(CriterionId.ML2)
def eval_ml2(design: Design, domain: DomainSpec) -> float:
    """
    修正 L2 discrepancy（座標先正規化到 [0,1]）

        (4/3)^k − (2^(1−k)/n)·Σ_d Π_i (3 − x_di²)
                + (1/n²)·Σ_d Σ_j Π_i [2 − max(x_di, x_ji)]
    """
    x = normalize_unit(design, domain)
    n, k = x.shape
    if n == 0:
        raise DomainError("ML2 needs at least one point")
    first = (4.0 / 3.0) ** k
    second = 2.0 ** (1 - k) / n * np.sum(np.prod(3.0 - x ** 2, axis=1))
    pair_max = np.maximum(x[:, None, :], x[None, :, :])
    third = np.sum(np.prod(2.0 - pair_max, axis=2)) / n ** 2
    return float(first - second + third)
