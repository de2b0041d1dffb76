"""
Orthogonality 準則：CN、PMCC、SRCC、KRCC

三種相關係數準則皆為 sqrt(Σ_{i<j} c²_ij)，範圍 [0, sqrt(k(k−1)/2)]。
相關係數函式（pearson / spearman / kendall_tau）也供敏感度分析使用。
"""
import math
from typing import Optional

import numpy as np
from scipy.stats import rankdata

from errors import DegenerateDesignError, DomainError
from models import CriterionId, Design, DomainSpec
from doe.core import center_scale, code_symmetric
from .registry import criterion

# λ_min / λ_max 低於此值視為奇異
SINGULAR_TOLERANCE = 1e-12


# ==================== 相關係數 ====================

def pearson(x: np.ndarray, y: np.ndarray) -> float:
    """積差相關係數；任一向量為常數時回傳 nan"""
    xc = np.asarray(x, dtype=float) - np.mean(x)
    yc = np.asarray(y, dtype=float) - np.mean(y)
    denom = math.sqrt(float(np.dot(xc, xc)) * float(np.dot(yc, yc)))
    if denom == 0.0:
        return math.nan
    return float(np.dot(xc, yc)) / denom


def spearman_from_ranks(rx: np.ndarray, ry: np.ndarray, tied: bool) -> float:
    """由秩計算 Spearman；有 ties 時改用 mid-rank 的積差相關，常數向量回傳 0"""
    n = rx.shape[0]
    if not tied:
        d = rx - ry
        return 1.0 - 6.0 * float(np.dot(d, d)) / (n * (n * n - 1))
    rho = pearson(rx, ry)
    return 0.0 if math.isnan(rho) else rho


def has_ties(values: np.ndarray) -> bool:
    return np.unique(values).shape[0] < values.shape[0]


def spearman(x: np.ndarray, y: np.ndarray) -> float:
    """
    Spearman 秩相關

    無 ties 時用 1 − 6Σd²/(n(n²−1))；有 ties 時對 mid-rank 計算積差相關。
    常數向量的相關係數定義為 0。
    """
    x = np.asarray(x, dtype=float).ravel()
    y = np.asarray(y, dtype=float).ravel()
    if x.shape != y.shape:
        raise DomainError(f"Length mismatch: {x.shape[0]} vs {y.shape[0]}")
    if x.shape[0] < 2:
        raise DomainError("Spearman correlation needs at least two observations")
    return spearman_from_ranks(rankdata(x), rankdata(y), has_ties(x) or has_ties(y))


def kendall_tau(x: np.ndarray, y: np.ndarray) -> float:
    """Kendall tau-a：(concordant − discordant) / (n(n−1)/2)，tied pairs 不計入分子"""
    x = np.asarray(x, dtype=float).ravel()
    y = np.asarray(y, dtype=float).ravel()
    n = x.shape[0]
    if y.shape[0] != n:
        raise DomainError(f"Length mismatch: {n} vs {y.shape[0]}")
    if n < 2:
        raise DomainError("Kendall correlation needs at least two observations")
    i, j = np.triu_indices(n, k=1)
    concordance = np.sign(x[j] - x[i]) * np.sign(y[j] - y[i])
    return float(np.sum(concordance)) / (n * (n - 1) / 2)


def _upper_norm(matrix: np.ndarray) -> float:
    """sqrt(Σ_{i<j} m²_ij)"""
    upper = matrix[np.triu_indices(matrix.shape[0], k=1)]
    return math.sqrt(float(np.sum(upper ** 2)))


# ==================== 準則 ====================

@criterion(CriterionId.CN)
def eval_cn(design: Design, domain: Optional[DomainSpec] = None, coding: str = "domain") -> float:
    """
    XᵀX 的 λ_max / λ_min

    Args:
        design: 設計
        domain: 設計空間（coding="domain" 時必需）
        coding: "domain" 以 domain 中點編碼到 [-1,1]；"column" 使用 center_scale

    Raises:
        DegenerateDesignError: XᵀX 奇異或存在常數欄
    """
    if coding == "domain":
        if domain is None:
            raise DomainError("CN with domain coding needs the domain")
        x = code_symmetric(design, domain)
    elif coding == "column":
        x = center_scale(design, domain)
    else:
        raise DomainError(f"Unknown CN coding: {coding!r}")

    eigenvalues = np.linalg.eigvalsh(x.T @ x)
    smallest, largest = float(eigenvalues[0]), float(eigenvalues[-1])
    if largest <= 0.0 or smallest <= SINGULAR_TOLERANCE * largest:
        raise DegenerateDesignError("Singular XᵀX: condition number undefined")
    return largest / smallest


@criterion(CriterionId.PMCC)
def eval_pmcc(design: Design) -> float:
    """
    積差相關係數的上三角平方和開根號

    Raises:
        DegenerateDesignError: 存在常數欄
    """
    x = design.points.astype(float)
    centered = x - x.mean(axis=0)
    norms = np.sqrt(np.sum(centered ** 2, axis=0))
    constant = np.flatnonzero(norms == 0)
    if constant.size:
        raise DegenerateDesignError(f"Constant column(s) {constant.tolist()}: PMCC undefined")
    corr = (centered.T @ centered) / np.outer(norms, norms)
    return _upper_norm(corr)


@criterion(CriterionId.SRCC)
def eval_srcc(design: Design) -> float:
    """Spearman 秩相關的上三角平方和開根號"""
    n, k = design.n, design.k
    if n < 2:
        raise DomainError("SRCC needs at least two points")
    x = design.points.astype(float)
    r = rankdata(x, axis=0)
    tied = [has_ties(x[:, d]) for d in range(k)]
    total = 0.0
    for i in range(k):
        for j in range(i + 1, k):
            rho = spearman_from_ranks(r[:, i], r[:, j], tied[i] or tied[j])
            total += rho * rho
    return math.sqrt(total)


@criterion(CriterionId.KRCC)
def eval_krcc(design: Design) -> float:
    """Kendall tau-a 的上三角平方和開根號"""
    n = design.n
    if n < 2:
        raise DomainError("KRCC needs at least two points")
    x = design.points
    i, j = np.triu_indices(n, k=1)
    signs = np.sign(x[j] - x[i]).astype(float)
    tau = (signs.T @ signs) / (n * (n - 1) / 2)
    return _upper_norm(tau)
