"""
Sensitivity - 以取樣為基礎的敏感度分析

參數 x_i 對回應 z 的影響以 Spearman 秩相關 ρ(x_i, z) 估計；
設計的品質以估計值與參考值的平均絕對差 ε 衡量。
參考值來自完整網格（可列舉時）或 Monte Carlo 取樣。
"""
from typing import Optional

import numpy as np
from scipy.stats import rankdata

from config.settings import get_config
from errors import DomainError
from models import Design, DomainSpec, SensitivityReport
from benchmarks.base import ResponseModel
from doe.criteria import has_ties, spearman_from_ranks
from utils.logger import Operation, get_logger

MIN_MONTE_CARLO_SAMPLES = 1000
MONTE_CARLO_CHUNK = 100_000


# ==================== 相關係數 ====================

def param_response_srcc(inputs: np.ndarray, response: np.ndarray) -> np.ndarray:
    """
    每個輸入欄與回應的 Spearman 秩相關

    Args:
        inputs: (n, k) 輸入值（index 或物理值皆可，只用到秩）
        response: 長度 n 的回應

    Returns:
        np.ndarray: 長度 k 的 ρ；常數欄或常數回應的 ρ 為 0

    Raises:
        DomainError: n < 3 或長度不符
    """
    # 保留輸入 dtype，秩逐欄計算
    x = np.asarray(inputs)
    if x.ndim == 1:
        x = x.reshape(-1, 1)
    z = np.asarray(response, dtype=float).ravel()
    n = x.shape[0]
    if z.shape[0] != n:
        raise DomainError(f"Inputs have {n} rows, response has {z.shape[0]}")
    if n < 3:
        raise DomainError("param_response_srcc needs at least three observations")

    if np.all(z == z[0]):
        get_logger().warning("Constant response: rank correlations defined as 0")
        return np.zeros(x.shape[1])

    rz = rankdata(z)
    z_tied = has_ties(z)
    return np.array([
        spearman_from_ranks(rankdata(x[:, d]), rz, z_tied or has_ties(x[:, d]))
        for d in range(x.shape[1])
    ])


def response_srcc(inputs: np.ndarray, responses: np.ndarray) -> np.ndarray:
    """多回應版本：回傳 (r, k) 矩陣"""
    responses = np.asarray(responses, dtype=float)
    if responses.ndim == 1:
        responses = responses.reshape(-1, 1)
    return np.vstack([
        param_response_srcc(inputs, responses[:, j]) for j in range(responses.shape[1])
    ])


def correlation_error(estimated: np.ndarray, reference: np.ndarray) -> float:
    """
    ε = (1/k)·Σ|ρ̃_i − ρ_i|

    Raises:
        DomainError: 長度不符或為空
    """
    est = np.asarray(estimated, dtype=float).ravel()
    ref = np.asarray(reference, dtype=float).ravel()
    if est.shape != ref.shape:
        raise DomainError(f"Length mismatch: {est.shape[0]} vs {ref.shape[0]}")
    if est.size == 0:
        raise DomainError("correlation_error() needs non-empty vectors")
    return float(np.mean(np.abs(est - ref)))


# ==================== 參考值 ====================

def full_design_reference(
    domain: DomainSpec,
    model: ResponseModel,
    max_cells: Optional[int] = None
) -> np.ndarray:
    """
    以完整網格計算參考相關係數

    Returns:
        np.ndarray: (r, k) 矩陣

    Raises:
        DomainError: 網格格數超過 max_cells
    """
    if max_cells is None:
        max_cells = get_config().max_grid_cells
    if domain.cell_count > max_cells:
        raise DomainError(
            f"Full design of {domain.cell_count} cells exceeds the limit of {max_cells}"
        )
    grid = domain.full_grid()
    get_logger().debug(f"{model.model_id}: full-design reference over {grid.shape[0]} points")
    return response_srcc(grid, model.evaluate(domain.physical(grid)))


def index_dtype(domain: DomainSpec) -> np.dtype:
    """容納所有 level index 的最小整數型別"""
    return np.min_scalar_type(-(max(domain.levels) + 1))


def sample_levels(domain: DomainSpec, sample_count: int, rng: np.random.Generator) -> np.ndarray:
    """均勻取樣（可重複）的 level index 矩陣，以 index_dtype 儲存"""
    dtype = index_dtype(domain)
    return rng.integers(0, np.asarray(domain.levels, dtype=dtype), size=(sample_count, domain.k), dtype=dtype)


def monte_carlo_reference(
    domain: DomainSpec,
    model: ResponseModel,
    sample_count: int,
    rng: np.random.Generator,
    chunk: int = MONTE_CARLO_CHUNK
) -> np.ndarray:
    """
    以均勻取樣（可重複）的 level 組合計算參考相關係數

    Returns:
        np.ndarray: (r, k) 矩陣

    Raises:
        DomainError: sample_count < 1000
    """
    if sample_count < MIN_MONTE_CARLO_SAMPLES:
        raise DomainError(
            f"Monte Carlo reference needs at least {MIN_MONTE_CARLO_SAMPLES} samples, got {sample_count}"
        )
    logger = get_logger()
    points = sample_levels(domain, sample_count, rng)
    responses = np.empty((sample_count, len(model.response_names)))
    for start in range(0, sample_count, chunk):
        stop = min(start + chunk, sample_count)
        responses[start:stop] = model.evaluate(domain.physical(points[start:stop]))
        logger.progress(
            f"{model.model_id}: Monte Carlo {stop}/{sample_count}", Operation.SOLVE
        )
    logger.finish_progress()
    return response_srcc(points, responses)


# ==================== 報告 ====================

def estimate_report(
    design: Design,
    domain: DomainSpec,
    model: ResponseModel,
    reference: np.ndarray,
    design_id: str = "design"
) -> SensitivityReport:
    """以設計點計算 ρ̃ 並與參考值比較"""
    design.validate(domain)
    responses = model.evaluate(domain.physical(design.points))
    return SensitivityReport(
        estimates=response_srcc(design.points, responses),
        reference=reference,
        response_names=list(model.response_names),
        design_id=design_id,
        model_id=model.model_id,
        n=design.n,
    )
