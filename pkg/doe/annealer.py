"""
Annealer - 離散設計的模擬退火最小化

鄰域依起始設計決定：
- 自由設計：依序（step mod n）選一點移到均勻抽取的空格
- LH 設計：隨機選兩列與一個座標交換其值（保持 LH 性質）

溫度在每個 stage 結束時除以 T_mlt，stage 於 stage_length 次評估或
accepted_quota 次接受後結束；接受計數每個 stage 重設。
"""
import math
from typing import Optional, Sequence, Set, Tuple

import numpy as np

from errors import DomainError, GridExhaustedError
from models import (
    CriterionId, Design, DistanceScale, DomainSpec, DoptConfig, OptResult, RngSeed, SAConfig
)
from doe.criteria import bind_evaluator
from utils.logger import get_logger


Cell = Tuple[int, ...]


# ==================== Metropolis ====================

def metropolis_accept(f_old: float, f_new: float, t: float, u: float) -> bool:
    """
    exp((f_old − f_new) / t) ≥ u

    Raises:
        DomainError: t ≤ 0
    """
    if t <= 0:
        raise DomainError(f"Temperature must be positive, got {t}")
    if f_new <= f_old:
        return True
    if math.isinf(f_new):
        return False
    return math.exp((f_old - f_new) / t) >= u


# ==================== 鄰域 ====================

def _movable_rows(n: int, movable: Optional[Sequence[int]]) -> np.ndarray:
    rows = np.arange(n) if movable is None else np.unique(np.asarray(movable, dtype=np.int64))
    if rows.size and (rows[0] < 0 or rows[-1] >= n):
        raise DomainError(f"Movable rows {rows.tolist()} out of range for n={n}")
    return rows


def _random_free_cell(
    occupied: Set[Cell],
    levels: np.ndarray,
    total: int,
    rng: np.random.Generator
) -> Cell:
    """均勻抽取一個未被佔用的網格點"""
    if len(occupied) >= total:
        raise GridExhaustedError("No unoccupied grid cell left")
    if 2 * len(occupied) <= total:
        while True:
            cell = tuple(int(v) for v in rng.integers(0, levels))
            if cell not in occupied:
                return cell
    taken = np.ravel_multi_index(np.asarray(list(occupied)).T, tuple(levels))
    free = np.setdiff1d(np.arange(total), taken)
    return tuple(int(v) for v in np.unravel_index(rng.choice(free), tuple(levels)))


def _two_rows(rows: np.ndarray, rng: np.random.Generator) -> Tuple[int, int]:
    """從 rows 均勻抽兩個相異列"""
    while True:
        i, j = rng.integers(rows.size, size=2)
        if i != j:
            return int(rows[i]), int(rows[j])


def _row_duplicated(points: np.ndarray, row: int) -> bool:
    return np.count_nonzero(np.all(points == points[row], axis=1)) > 1


def propose_free_move(
    design: Design,
    domain: DomainSpec,
    rng: np.random.Generator,
    step: int = 0,
    movable: Optional[Sequence[int]] = None
) -> Design:
    """
    將第 (step mod |movable|) 個可移動點移到隨機空格

    Raises:
        GridExhaustedError: 網格已滿
    """
    rows = _movable_rows(design.n, movable)
    if rows.size == 0:
        raise DomainError("No movable rows")
    row = int(rows[step % rows.size])
    occupied = {tuple(p) for p in design.points.tolist()}
    cell = _random_free_cell(occupied, np.asarray(domain.levels), domain.cell_count, rng)
    points = np.array(design.points)
    points[row] = cell
    return design.with_points(points)


def propose_lh_swap(
    design: Design,
    rng: np.random.Generator,
    movable: Optional[Sequence[int]] = None
) -> Design:
    """
    交換兩個相異列在隨機座標上的值

    Raises:
        DomainError: 非 LH 設計或可交換的列少於兩列
    """
    if not design.lh_constrained:
        raise DomainError("propose_lh_swap needs an LH-constrained design")
    rows = _movable_rows(design.n, movable)
    if rows.size < 2:
        raise DomainError("LH swap needs at least two movable rows")
    a, b = _two_rows(rows, rng)
    c = int(rng.integers(design.k))
    points = np.array(design.points)
    points[[a, b], c] = points[[b, a], c]
    return design.with_points(points)


# ==================== 退火 ====================

def anneal(
    start: Design,
    cid: CriterionId,
    domain: DomainSpec,
    cfg: SAConfig,
    dopt_cfg: Optional[DoptConfig] = None,
    rng: Optional[np.random.Generator] = None,
    movable: Optional[Sequence[int]] = None,
    scale: DistanceScale = DistanceScale.INDEX,
    seed: Optional[RngSeed] = None
) -> OptResult:
    """
    模擬退火最小化

    Args:
        start: 起始設計（lh_constrained 決定鄰域）
        cid: 要最小化的準則
        domain: 設計空間
        cfg: 退火排程
        dopt_cfg: D-optimality 配置
        rng: 亂數產生器（未提供時由 seed 建立）
        movable: 可移動的列（序列擴充時只有新點可動）
        scale: 距離尺度
        seed: 記錄在結果中的 seed

    Returns:
        OptResult: 歷來最佳設計、最佳值與每個 stage 的最佳值
    """
    logger = get_logger()
    start.validate(domain)
    if rng is None:
        if seed is None:
            raise DomainError("anneal() needs either rng or seed")
        rng = seed.generator()

    evaluator = bind_evaluator(cid, domain, dopt_cfg, scale)

    def score(points: np.ndarray) -> float:
        return evaluator(start.view(points))

    points = np.array(start.points)
    current = score(points)
    best, best_points = current, points.copy()
    evaluations = 1

    rows = _movable_rows(start.n, movable)
    swap = start.lh_constrained
    # 交換不改變各欄的值集合：各欄值皆相異時不可能產生重複點
    check_duplicates = swap and not start.allow_duplicates and any(
        np.unique(points[:, d]).size < start.n for d in range(start.k)
    )
    levels = np.asarray(domain.levels)
    total = domain.cell_count
    occupied = {tuple(p) for p in points.tolist()}

    if (swap and rows.size < 2) or (not swap and (rows.size == 0 or len(occupied) >= total)):
        logger.debug(f"{cid.value}: no move available, returning the start design")
        return OptResult(
            design=start, value=current, history=[current], evaluations=evaluations,
            criterion=cid, seed=seed, config=cfg,
        )

    t = cfg.t_max
    t_mlt = cfg.t_mlt
    stage_length, quota = cfg.stage, cfg.quota
    history = []
    accepted = reductions = 0
    stage_evals = stage_accepts = 0
    step = 0

    while evaluations < cfg.n_max:
        candidate = points.copy()
        if swap:
            a, b = _two_rows(rows, rng)
            c = int(rng.integers(start.k))
            candidate[[a, b], c] = candidate[[b, a], c]
            duplicate = check_duplicates and (
                _row_duplicated(candidate, a) or _row_duplicated(candidate, b)
            )
            f_new = math.inf if duplicate else score(candidate)
        else:
            row = int(rows[step % rows.size])
            cell = _random_free_cell(occupied, levels, total, rng)
            candidate[row] = cell
            f_new = score(candidate)
        step += 1
        evaluations += 1
        stage_evals += 1

        if metropolis_accept(current, f_new, t, rng.random()):
            if not swap:
                occupied.discard(tuple(points[row].tolist()))
                occupied.add(cell)
            points = candidate
            current = f_new
            accepted += 1
            stage_accepts += 1
            if current < best:
                best, best_points = current, points.copy()

        if stage_evals >= stage_length or stage_accepts >= quota:
            history.append(best)
            t = max(t / t_mlt, cfg.t_final)
            reductions += 1
            logger.debug(
                f"{cid.value} stage {reductions}: best={best:.6g} accepted={stage_accepts}/{stage_evals} T={t:.3g}"
            )
            stage_evals = stage_accepts = 0

    if stage_evals:
        history.append(best)

    return OptResult(
        design=start.with_points(best_points),
        value=best,
        history=history,
        evaluations=evaluations,
        criterion=cid,
        seed=seed,
        accepted=accepted,
        reductions=reductions,
        config=cfg,
    )
