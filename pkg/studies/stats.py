"""
Statistics - 箱形圖五數摘要與表格彙總

四分位數以順序統計量之間的線性內插計算（numpy method="linear"）。
"""
from typing import Any, Dict, Iterable, List, Sequence

import numpy as np
import pandas as pd

from errors import DomainError
from models import BoxplotStats


def boxplot_stats(values: Iterable[float]) -> BoxplotStats:
    """
    五數摘要

    Args:
        values: 數值序列（不可為空）

    Returns:
        BoxplotStats: min ≤ q1 ≤ median ≤ q3 ≤ max

    Raises:
        DomainError: 空序列
    """
    data = np.asarray(list(values), dtype=float)
    if data.size == 0:
        raise DomainError("boxplot_stats() needs at least one value")
    q1, median, q3 = np.percentile(data, [25, 50, 75], method="linear")
    return BoxplotStats(
        min=float(data.min()),
        q1=float(q1),
        median=float(median),
        q3=float(q3),
        max=float(data.max()),
        count=int(data.size),
    )


def grouped_boxplots(
    rows: Sequence[Dict[str, Any]],
    keys: List[str],
    value: str
) -> List[Dict[str, Any]]:
    """
    依 keys 分組計算五數摘要

    組的順序為 keys 在 rows 中第一次出現的順序；非有限值（退化設計的 +inf）
    不列入統計，全部為非有限值的組會被略過。

    Returns:
        List[Dict]: 每組一列，包含 keys 與 BoxplotStats 欄位
    """
    frame = pd.DataFrame(list(rows))
    out: List[Dict[str, Any]] = []
    for group, part in frame.groupby(keys, sort=False):
        group = group if isinstance(group, tuple) else (group,)
        values = part[value].to_numpy(dtype=float)
        values = values[np.isfinite(values)]
        if values.size == 0:
            continue
        stats = boxplot_stats(values)
        out.append({**dict(zip(keys, group)), **stats.to_dict()})
    return out


def mean_max_table(
    rows: Sequence[Dict[str, Any]],
    keys: List[str],
    value: str,
    scale: float = 100.0
) -> List[Dict[str, Any]]:
    """
    依 keys 分組的 scale·mean 與 scale·max（誤差表格）

    Returns:
        List[Dict]: 每組一列，欄位為 keys + mean + max
    """
    frame = pd.DataFrame(list(rows))
    out: List[Dict[str, Any]] = []
    for group, part in frame.groupby(keys, sort=False):
        group = group if isinstance(group, tuple) else (group,)
        values = part[value].to_numpy(dtype=float)
        out.append({
            **dict(zip(keys, group)),
            "mean": scale * float(values.mean()),
            "max": scale * float(values.max()),
            "count": int(values.size),
        })
    return out
