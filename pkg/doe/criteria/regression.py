"""
D-optimality：多項式迴歸矩陣 Z 與 −det(ZᵀZ + τ·D)

基底依總次數排列，同一次數內先放純冪項再放交叉項，例如 k=2、次數 2：
[1, x1, x2, x1², x2², x1x2]。
Bayesian 修正在每個維度附加相同數量的高次純冪項（保持等向性），
並只在這些欄的對角線加上 τ。
"""
from itertools import combinations_with_replacement
from math import comb
from typing import List, Optional, Tuple

import numpy as np

from errors import DomainError
from models import CriterionId, Design, DomainSpec, DoptConfig
from doe.core import code_symmetric, normalize_unit
from .registry import criterion

Exponent = Tuple[int, ...]


def polynomial_exponents(k: int, degree: int) -> List[Exponent]:
    """總次數 ≤ degree 的完整多項式基底指數"""
    exponents: List[Exponent] = [(0,) * k]
    for d in range(1, degree + 1):
        pure = [tuple(d if j == i else 0 for j in range(k)) for i in range(k)]
        mixed = []
        for combo in combinations_with_replacement(range(k), d):
            powers = [0] * k
            for i in combo:
                powers[i] += 1
            term = tuple(powers)
            if term not in pure:
                mixed.append(term)
        exponents.extend(pure + mixed)
    return exponents


def auto_degree(k: int, n: int) -> int:
    """欄數 C(k+p, p) ≤ n 的最大次數 p"""
    degree = 0
    while comb(k + degree + 1, degree + 1) <= n:
        degree += 1
    return degree


def augmentation_exponents(k: int, base_degree: int, cfg: DoptConfig) -> List[Exponent]:
    """Bayesian 附加項；預設為 base_degree+1..base_degree+bayes_terms 的純冪"""
    if cfg.extra_terms is not None:
        for term in cfg.extra_terms:
            if len(term) != k or any(e < 0 for e in term):
                raise DomainError(f"extra term {term} does not match k={k}")
        return [tuple(term) for term in cfg.extra_terms]
    return [
        tuple(base_degree + j if i == dim else 0 for i in range(k))
        for j in range(1, cfg.bayes_terms + 1)
        for dim in range(k)
    ]


def _basis_coordinates(design: Design, cfg: DoptConfig, domain: Optional[DomainSpec]) -> np.ndarray:
    if domain is None:
        return design.points.astype(float)
    if cfg.coding == "unit":
        return normalize_unit(design, domain)
    return code_symmetric(design, domain)


def build_regression_matrix(
    design: Design,
    cfg: DoptConfig,
    domain: Optional[DomainSpec] = None
) -> Tuple[np.ndarray, np.ndarray]:
    """
    建立迴歸矩陣

    Args:
        design: 設計
        cfg: D-optimality 配置
        domain: 提供時依 cfg.coding 編碼座標；否則直接使用 level index

    Returns:
        (Z, 附加欄索引)

    Raises:
        DomainError: 基底欄數超過點數
    """
    n, k = design.n, design.k
    degree = cfg.base_degree if cfg.base_degree is not None else auto_degree(k, n)
    base = polynomial_exponents(k, degree)
    if len(base) > n:
        raise DomainError(
            f"Degree-{degree} basis has {len(base)} columns but the design has only {n} points"
        )
    extra = augmentation_exponents(k, degree, cfg)
    exponents = np.asarray(base + extra, dtype=float)

    x = _basis_coordinates(design, cfg, domain)
    z = np.prod(x[:, None, :] ** exponents[None, :, :], axis=2)
    return z, np.arange(len(base), len(base) + len(extra))


@criterion(CriterionId.DOPT)
def eval_dopt(
    design: Design,
    cfg: Optional[DoptConfig] = None,
    domain: Optional[DomainSpec] = None
) -> float:
    """−det(ZᵀZ + τ·D)，D 為選取附加欄的 0/1 對角矩陣"""
    cfg = cfg if cfg is not None else DoptConfig()
    z, augmented = build_regression_matrix(design, cfg, domain)
    info = z.T @ z
    info[augmented, augmented] += cfg.tau
    return -float(np.linalg.det(info)) + 0.0
