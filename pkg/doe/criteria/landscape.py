"""
Landscape scan - 固定 n−1 個點，將最後一點放到每個網格位置並評估準則
"""
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from errors import DomainError
from models import CriterionId, Design, DistanceScale, DomainSpec, DoptConfig
from .registry import safe_evaluate


@dataclass
class LandscapeScan:
    """
    掃描結果

    values / occupied 的形狀為 domain.levels，以 [i0, i1, ...] 索引；
    退化位置（例如 AE 的重複點）值為 +inf。
    """
    criterion: CriterionId
    values: np.ndarray
    occupied: np.ndarray

    def argmin(self) -> Tuple[int, ...]:
        return tuple(int(i) for i in np.unravel_index(np.argmin(self.values), self.values.shape))

    def minimum(self) -> float:
        return float(np.min(self.values))

    def as_table(self) -> np.ndarray:
        """2-D 輸出表格：row = y (dim 1)，col = x (dim 0)"""
        if self.values.ndim != 2:
            raise DomainError("Tables are only defined for two-dimensional scans")
        return self.values.T


def landscape_scan(
    cid: CriterionId,
    fixed: Design,
    domain: DomainSpec,
    dopt_cfg: Optional[DoptConfig] = None,
    scale: DistanceScale = DistanceScale.INDEX
) -> LandscapeScan:
    """
    對每個網格位置評估 (fixed ∪ {cell})

    Args:
        cid: 準則
        fixed: 固定的 n−1 個點
        domain: 設計空間
        dopt_cfg: D-optimality 配置
        scale: 距離尺度
    """
    if fixed.k != domain.k:
        raise DomainError(f"Fixed design has {fixed.k} dimensions, domain has {domain.k}")
    grid = domain.full_grid()
    values = np.empty(grid.shape[0])
    occupied = np.zeros(grid.shape[0], dtype=bool)
    taken = {tuple(row) for row in fixed.points.tolist()}

    for idx, cell in enumerate(grid):
        candidate = Design(points=np.vstack([fixed.points, cell]), allow_duplicates=True)
        values[idx] = safe_evaluate(cid, candidate, domain, dopt_cfg, scale)
        occupied[idx] = tuple(cell.tolist()) in taken

    return LandscapeScan(
        criterion=cid,
        values=values.reshape(domain.levels),
        occupied=occupied.reshape(domain.levels),
    )
