"""
Sequential - 以批次方式擴充既有設計

每次迭代加入 batch_size 個新點，只有新點可移動，舊點固定；
準則永遠以整個設計評估。點的 tags 記錄其所屬迭代（0 = 初始設計）。
"""
from typing import Optional, Set, Tuple

import numpy as np

from errors import DegenerateDesignError, DomainError, GridExhaustedError
from models import (
    CriterionId, Design, DistanceScale, DomainSpec, DoptConfig, ExtensionPlan,
    ExtensionStrategy, SAConfig
)
from doe.annealer import anneal
from doe.core import has_uniform_occupancy
from utils.logger import Operation, get_logger

# 新 LH 批次與舊點重疊時的修補交換次數上限
LH_REPAIR_SWAPS = 10_000


def _initial_tags(seed: Design) -> np.ndarray:
    if seed.tags is not None:
        return np.array(seed.tags)
    return np.zeros(seed.n, dtype=np.int64)


def _random_free_batch(
    occupied: Set[Tuple[int, ...]],
    domain: DomainSpec,
    size: int,
    rng: np.random.Generator
) -> np.ndarray:
    """從未佔用的網格點中不放回抽取 size 個"""
    grid = domain.full_grid()
    free = np.array([tuple(row) not in occupied for row in grid.tolist()])
    choice = rng.choice(np.flatnonzero(free), size=size, replace=False)
    return grid[choice]


def _random_lh_batch(
    occupied: Set[Tuple[int, ...]],
    m: int,
    k: int,
    rng: np.random.Generator
) -> np.ndarray:
    """
    產生一組與既有點不重疊的 LH 批次

    Raises:
        DegenerateDesignError: 修補交換次數用盡
    """
    batch = np.column_stack([rng.permutation(m) for _ in range(k)])
    for _ in range(LH_REPAIR_SWAPS):
        clashes = [i for i, row in enumerate(batch.tolist()) if tuple(row) in occupied]
        if not clashes:
            return batch
        a = clashes[0]
        b = int(rng.choice([i for i in range(m) if i != a]))
        c = int(rng.integers(k))
        batch[[a, b], c] = batch[[b, a], c]
    raise DegenerateDesignError("Could not place a collision-free LH batch")


def _check_seed(seed: Design, domain: DomainSpec) -> None:
    seed.validate(domain)
    if seed.allow_duplicates or seed.has_duplicates():
        raise DomainError("Sequential extension needs a duplicate-free seed design")


def extend_free(
    seed: Design,
    domain: DomainSpec,
    plan: ExtensionPlan,
    cid: CriterionId,
    cfg: SAConfig,
    rng: np.random.Generator,
    dopt_cfg: Optional[DoptConfig] = None,
    scale: DistanceScale = DistanceScale.INDEX
) -> Design:
    """
    自由擴充：每批新點可放在任何未佔用的網格點

    Raises:
        GridExhaustedError: 網格放不下下一批
    """
    _check_seed(seed, domain)
    logger = get_logger()
    points = np.array(seed.points)
    tags = _initial_tags(seed)
    first = int(tags.max()) + 1 if tags.size else 1

    for step in range(plan.iterations):
        if points.shape[0] + plan.batch_size > domain.cell_count:
            raise GridExhaustedError(
                f"No room for {plan.batch_size} more points on {domain.cell_count} cells"
            )
        occupied = {tuple(row) for row in points.tolist()}
        batch = _random_free_batch(occupied, domain, plan.batch_size, rng)
        start = Design(
            points=np.vstack([points, batch]),
            tags=np.concatenate([tags, np.full(plan.batch_size, first + step)]),
        )
        movable = np.arange(points.shape[0], start.n)
        result = anneal(start, cid, domain, cfg, dopt_cfg=dopt_cfg, rng=rng, movable=movable, scale=scale)
        points, tags = np.array(result.design.points), np.array(start.tags)
        logger.progress(
            f"{cid.value} free extension {step + 1}/{plan.iterations}: n={start.n} value={result.value:.6g}",
            Operation.EXTEND,
        )

    return Design(points=points, tags=tags)


def extend_lh(
    seed: Design,
    domain: DomainSpec,
    plan: ExtensionPlan,
    cid: CriterionId,
    cfg: SAConfig,
    rng: np.random.Generator,
    dopt_cfg: Optional[DoptConfig] = None,
    scale: DistanceScale = DistanceScale.INDEX
) -> Design:
    """
    保持 LH 的擴充：每批是一組 LH，交換只發生在兩個新點之間

    迭代 j 之後每個維度的每個 level 恰好有 j+1 個點。

    Raises:
        DomainError: 非方形網格、batch_size 不等於 level 數或起始設計佔用不均
        GridExhaustedError: 網格放不下下一批
    """
    if not domain.is_square:
        raise DomainError(
            f"LH-preserving extension needs equal level counts, got {domain.levels}"
        )
    m = domain.levels[0]
    if plan.batch_size != m:
        raise DomainError(f"LH batches have {m} points, got batch_size={plan.batch_size}")
    _check_seed(seed, domain)
    if seed.n % m or not has_uniform_occupancy(seed, domain):
        raise DomainError("Seed design does not have uniform level occupancy")

    logger = get_logger()
    points = np.array(seed.points)
    tags = _initial_tags(seed)
    first = int(tags.max()) + 1 if tags.size else 1

    for step in range(plan.iterations):
        if points.shape[0] + m > domain.cell_count:
            raise GridExhaustedError(f"No room for {m} more points on {domain.cell_count} cells")
        occupied = {tuple(row) for row in points.tolist()}
        batch = _random_lh_batch(occupied, m, domain.k, rng)
        start = Design(
            points=np.vstack([points, batch]),
            lh_constrained=True,
            tags=np.concatenate([tags, np.full(m, first + step)]),
        )
        movable = np.arange(points.shape[0], start.n)
        result = anneal(start, cid, domain, cfg, dopt_cfg=dopt_cfg, rng=rng, movable=movable, scale=scale)
        points, tags = np.array(result.design.points), np.array(start.tags)
        logger.progress(
            f"{cid.value} LH extension {step + 1}/{plan.iterations}: n={start.n} value={result.value:.6g}",
            Operation.EXTEND,
        )

    return Design(points=points, lh_constrained=True, tags=tags)


def extend(
    seed: Design,
    domain: DomainSpec,
    plan: ExtensionPlan,
    cid: CriterionId,
    cfg: SAConfig,
    rng: np.random.Generator,
    dopt_cfg: Optional[DoptConfig] = None,
    scale: DistanceScale = DistanceScale.INDEX
) -> Design:
    """依 plan.strategy 選擇 extend_free 或 extend_lh"""
    if plan.strategy is ExtensionStrategy.LH_PRESERVING:
        return extend_lh(seed, domain, plan, cid, cfg, rng, dopt_cfg, scale)
    return extend_free(seed, domain, plan, cid, cfg, rng, dopt_cfg, scale)


def design_at_stage(design: Design, stage: int) -> Design:
    """
    取出迭代 stage 結束時的設計（tag ≤ stage 的點）

    Raises:
        DomainError: 設計沒有 tags
    """
    if design.tags is None:
        raise DomainError("design_at_stage() needs a tagged design")
    mask = design.tags <= stage
    return Design(
        points=design.points[mask],
        lh_constrained=design.lh_constrained,
        allow_duplicates=design.allow_duplicates,
        tags=design.tags[mask],
    )
