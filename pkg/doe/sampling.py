"""
Sampling - 自由設計、Latin Hypercube 與 mixed-level LH 的隨機產生

所有產生器都接收明確的 numpy Generator，不使用全域亂數狀態。
"""
from typing import Optional

import numpy as np

from errors import DegenerateDesignError, DomainError, GridExhaustedError
from models import Design, DomainSpec, Restriction
from utils.logger import get_logger

# 網格格數超過此值時改用拒絕取樣，避免建立整個索引陣列
DENSE_GRID_LIMIT = 1_000_000

MIXED_LH_RETRIES = 1000


def random_free(domain: DomainSpec, n: int, rng: np.random.Generator) -> Design:
    """
    不放回地均勻抽取 n 個相異網格點

    Raises:
        GridExhaustedError: n 超過網格格數
    """
    total = domain.cell_count
    if n < 0 or n > total:
        raise GridExhaustedError(f"Cannot place {n} distinct points on {total} grid cells")

    if total <= DENSE_GRID_LIMIT or 2 * n > total:
        flat = rng.choice(total, size=n, replace=False)
        points = np.column_stack(np.unravel_index(flat, domain.levels))
    else:
        high = np.asarray(domain.levels)
        chosen: dict = {}
        while len(chosen) < n:
            chosen.setdefault(tuple(int(v) for v in rng.integers(0, high)), None)
        points = np.asarray(list(chosen), dtype=np.int64)
    return Design(points=points.reshape(n, domain.k))


def random_lh(domain: DomainSpec, rng: np.random.Generator) -> Design:
    """
    方形 LH：每欄為 0..n−1 的隨機排列

    Raises:
        DomainError: 各維度 level 數不同（請改用 mixed_lh）
    """
    if not domain.is_square:
        raise DomainError(f"random_lh needs equal level counts, got {domain.levels}; use mixed_lh")
    n = domain.levels[0]
    points = np.column_stack([rng.permutation(n) for _ in range(domain.k)])
    return Design(points=points, lh_constrained=True)


def replicated_lh(
    domain: DomainSpec,
    copies: int,
    rng: np.random.Generator,
    max_retries: int = MIXED_LH_RETRIES
) -> Design:
    """
    n = copies·m 的 LH：每欄為 0..m−1 各重複 copies 次的隨機排列

    每個 level 在每一欄恰好出現 copies 次；LH 交換保持此性質。

    Raises:
        DomainError: 非方形網格或 copies < 1
        DegenerateDesignError: 重試後仍有重複列
    """
    if not domain.is_square:
        raise DomainError(f"replicated_lh needs equal level counts, got {domain.levels}")
    if copies < 1:
        raise DomainError("copies must be >= 1")
    column = np.repeat(np.arange(domain.levels[0]), copies)
    n = column.size

    for _ in range(max_retries):
        points = np.column_stack([rng.permutation(column) for _ in range(domain.k)])
        if np.unique(points, axis=0).shape[0] == n:
            return Design(points=points, lh_constrained=True)

    raise DegenerateDesignError(
        f"replicated_lh: duplicate rows in {max_retries} attempts"
    )


def round_levels(indices: np.ndarray, n: int, m: int) -> np.ndarray:
    """將 n-level 的 index 映射到 m 個 level：round(i·(m−1)/(n−1))，0.5 進位"""
    if m == n:
        return np.asarray(indices, dtype=np.int64)
    return np.floor(np.asarray(indices) * (m - 1) / (n - 1) + 0.5).astype(np.int64)


def mixed_lh(
    domain: DomainSpec,
    rng: np.random.Generator,
    master: int = 0,
    max_retries: int = MIXED_LH_RETRIES
) -> Design:
    """
    Mixed-level LH：以 master 維度的 level 數 n 產生 LH，其餘維度四捨五入到各自的 level

    Raises:
        DomainError: master 維度不存在
        DegenerateDesignError: 重試後仍有重複列
    """
    if not 0 <= master < domain.k:
        raise DomainError(f"No valid master dimension {master} for k={domain.k}")
    n = domain.levels[master]

    for attempt in range(max_retries):
        base = np.column_stack([rng.permutation(n) for _ in range(domain.k)])
        points = np.column_stack([
            round_levels(base[:, d], n, m) for d, m in enumerate(domain.levels)
        ])
        if np.unique(points, axis=0).shape[0] == n:
            if attempt:
                get_logger().debug(f"mixed_lh: {attempt} rounding collision(s) resampled")
            return Design(points=points, lh_constrained=True)

    raise DegenerateDesignError(
        f"mixed_lh: rounding produced duplicate rows in {max_retries} attempts"
    )


def random_design(
    domain: DomainSpec,
    restriction: Restriction,
    rng: np.random.Generator,
    n: Optional[int] = None,
    master: int = 0
) -> Design:
    """
    依限制類型產生退火起始設計

    n 預設為 master 維度的 level 數；LH 在非方形網格上自動改用 mixed_lh，
    方形網格上 n 為 level 數的整數倍時改用 replicated_lh。
    """
    size = n if n is not None else domain.levels[master]
    if restriction is Restriction.FREE:
        return random_free(domain, size, rng)
    m = domain.levels[master]
    if restriction is Restriction.LH and domain.is_square and size > m and size % m == 0:
        return replicated_lh(domain, size // m, rng)
    if size != m:
        raise DomainError(f"LH designs have n = {domain.levels[master]} points, got {size}")
    if restriction is Restriction.LH and domain.is_square:
        return random_lh(domain, rng)
    return mixed_lh(domain, rng, master=master)
