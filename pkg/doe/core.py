"""
Design core - domain / design 共用工具

提供：
1. 座標正規化（[0,1]、[-1,1]、center-scale）
2. 秩（mid-rank）
3. 兩兩距離與最近鄰距離
4. 投影與重複點計數
5. LH / 佔用直方圖檢查

所有函式皆為純函式，可在多個 worker 中同時呼叫。
"""
from typing import Iterable, List, Optional, Sequence

import numpy as np
from scipy.spatial.distance import pdist, squareform
from scipy.stats import rankdata

from errors import DegenerateDesignError, DomainError
from models import Design, DistanceScale, DomainSpec


def _check_dims(design: Design, domain: DomainSpec) -> None:
    if design.k != domain.k:
        raise DomainError(f"Design has {design.k} dimensions, domain has {domain.k}")


# ==================== 正規化 ====================

def normalize_unit(design: Design, domain: DomainSpec) -> np.ndarray:
    """
    index / (level_count - 1)，逐欄映射到 [0,1]

    Raises:
        DomainError: design 與 domain 維度不符
    """
    _check_dims(design, domain)
    return design.points / (np.asarray(domain.levels, dtype=float) - 1.0)


def code_symmetric(design: Design, domain: DomainSpec) -> np.ndarray:
    """以 domain 中點為中心編碼到 [-1,1]"""
    return 2.0 * normalize_unit(design, domain) - 1.0


def center_scale(design: Design, domain: Optional[DomainSpec] = None) -> np.ndarray:
    """
    減去欄平均後除以最大絕對偏差

    每欄總和為 0，且至少一個元素為 ±1。

    Raises:
        DegenerateDesignError: 存在常數欄
    """
    if domain is not None:
        _check_dims(design, domain)
    x = design.points.astype(float)
    centered = x - x.mean(axis=0)
    spread = np.max(np.abs(centered), axis=0)
    constant = np.flatnonzero(spread == 0)
    if constant.size:
        raise DegenerateDesignError(f"Constant column(s) {constant.tolist()}: CN undefined")
    return centered / spread


def coordinates(
    design: Design,
    domain: Optional[DomainSpec] = None,
    scale: DistanceScale = DistanceScale.INDEX
) -> np.ndarray:
    """距離計算用的座標（index 或 [0,1]）"""
    if scale is DistanceScale.UNIT:
        if domain is None:
            raise DomainError("Unit-scale distances need the domain")
        return normalize_unit(design, domain)
    if domain is not None:
        _check_dims(design, domain)
    return design.points.astype(float)


# ==================== 秩 ====================

def ranks(values: Sequence[float]) -> np.ndarray:
    """mid-rank 秩，範圍 [1, n]"""
    arr = np.asarray(values, dtype=float).ravel()
    if arr.size == 0:
        raise DomainError("ranks() needs a non-empty sequence")
    return rankdata(arr, method="average")


# ==================== 距離 ====================

def pairwise_sq_distances(
    design: Design,
    domain: Optional[DomainSpec] = None,
    scale: DistanceScale = DistanceScale.INDEX
) -> np.ndarray:
    """
    平方歐氏距離，依 (i<j) 字典序排列

    Raises:
        DomainError: n < 2
    """
    if design.n < 2:
        raise DomainError("Pairwise distances need at least two points")
    return pdist(coordinates(design, domain, scale), "sqeuclidean")


def min_distances(
    design: Design,
    domain: Optional[DomainSpec] = None,
    scale: DistanceScale = DistanceScale.INDEX
) -> np.ndarray:
    """每個點到最近鄰的距離"""
    if design.n < 2:
        raise DomainError("Nearest-neighbour distances need at least two points")
    dist = squareform(pdist(coordinates(design, domain, scale)))
    np.fill_diagonal(dist, np.inf)
    return dist.min(axis=1)


def min_distance_sum(
    design: Design,
    domain: Optional[DomainSpec] = None,
    scale: DistanceScale = DistanceScale.INDEX
) -> float:
    """最近鄰距離總和（越小代表填充越差）"""
    return float(np.sum(min_distances(design, domain, scale)))


# ==================== 投影 ====================

def project(design: Design, keep_dims: Iterable[int]) -> Design:
    """
    只保留 keep_dims 的欄位，結果允許重複點

    Raises:
        DomainError: keep_dims 為空或超出範圍
    """
    keep: List[int] = list(keep_dims)
    if not keep:
        raise DomainError("project() needs at least one dimension to keep")
    if any(d < 0 or d >= design.k for d in keep):
        raise DomainError(f"keep_dims {keep} out of range for k={design.k}")
    return Design(
        points=design.points[:, keep],
        lh_constrained=design.lh_constrained,
        allow_duplicates=True,
        tags=design.tags,
    )


def redundant_count(design: Design) -> int:
    """n 減去相異列數"""
    if design.n == 0:
        return 0
    return design.n - np.unique(design.points, axis=0).shape[0]


# ==================== LH / 佔用 ====================

def level_occupancy(design: Design, domain: DomainSpec) -> List[np.ndarray]:
    """每個維度各 level 的點數"""
    _check_dims(design, domain)
    return [
        np.bincount(design.points[:, d], minlength=m)
        for d, m in enumerate(domain.levels)
    ]


def has_uniform_occupancy(design: Design, domain: DomainSpec) -> bool:
    """每個維度的每個 level 都有相同點數"""
    return all(np.all(counts == counts[0]) for counts in level_occupancy(design, domain))


def is_latin_hypercube(design: Design, domain: DomainSpec) -> bool:
    """每個 level 在每一欄恰好出現一次"""
    if any(m != design.n for m in domain.levels):
        return False
    return all(np.all(counts == 1) for counts in level_occupancy(design, domain))
