"""
Worker tasks - 可 pickle 的模組層級任務函式與 seed 衍生

每個 replicate 的亂數流由 (seed, 標籤, replicate) 決定，
因此不同 study 只要標籤相同就會產生相同的設計
（例如 projection 重建 tournament 的設計）。
"""
import zlib
from typing import List, Optional

import numpy as np

from models import (
    CriterionId, Design, DistanceScale, DomainSpec, DoptConfig, ExtensionPlan,
    ExtensionStrategy, OptResult, Restriction, RngSeed, SAConfig
)
from doe.annealer import anneal
from doe.criteria import LandscapeScan, landscape_scan
from doe.sampling import random_design
from doe.sequential import extend
from .pool import Task

# replicate 編號佔用 stream 的低位元
REPLICATE_BITS = 20


def task_seed(seed: int, *labels: object, replicate: int = 0) -> RngSeed:
    """由標籤雜湊與 replicate 編號衍生 RngSeed"""
    key = zlib.crc32("|".join(str(label) for label in labels).encode("utf-8"))
    return RngSeed(seed, stream=(key << REPLICATE_BITS) + replicate)


# ==================== 任務函式 ====================

def optimize_design(
    cid: CriterionId,
    domain: DomainSpec,
    restriction: Restriction,
    sa_cfg: SAConfig,
    dopt_cfg: DoptConfig,
    scale: DistanceScale,
    seed: RngSeed,
    n: Optional[int] = None
) -> OptResult:
    """隨機起始設計 + 退火"""
    rng = seed.generator()
    start = random_design(domain, restriction, rng, n=n)
    return anneal(start, cid, domain, sa_cfg, dopt_cfg=dopt_cfg, rng=rng, scale=scale, seed=seed)


def sequential_design(
    cid: CriterionId,
    domain: DomainSpec,
    strategy: ExtensionStrategy,
    iterations: int,
    sa_cfg: SAConfig,
    dopt_cfg: DoptConfig,
    scale: DistanceScale,
    seed: RngSeed
) -> Design:
    """
    最佳化初始設計後依策略擴充 iterations 次

    Returns:
        Design: tags 為每個點所屬的迭代（0 = 初始設計）
    """
    rng = seed.generator()
    restriction = Restriction.LH if strategy is ExtensionStrategy.LH_PRESERVING else Restriction.FREE
    start = random_design(domain, restriction, rng)
    initial = anneal(start, cid, domain, sa_cfg, dopt_cfg=dopt_cfg, rng=rng, scale=scale, seed=seed)
    plan = ExtensionPlan(batch_size=domain.levels[0], iterations=iterations, strategy=strategy)
    return extend(initial.design, domain, plan, cid, sa_cfg, rng, dopt_cfg, scale)


def scan_landscape(
    cid: CriterionId,
    fixed: np.ndarray,
    domain: DomainSpec,
    dopt_cfg: Optional[DoptConfig],
    scale: DistanceScale
) -> LandscapeScan:
    return landscape_scan(cid, Design(points=fixed), domain, dopt_cfg, scale)


# ==================== 任務清單 ====================

def optimization_tasks(
    seed: int,
    domains: List[DomainSpec],
    restrictions: List[Restriction],
    criteria: List[CriterionId],
    replicates: int,
    sa_cfg: SAConfig,
    dopt_cfg: DoptConfig,
    scale: DistanceScale
) -> List[Task]:
    """domain × restriction × criterion × replicate 的 one-shot 最佳化任務"""
    return [
        Task(
            task_id=(domain.label, restriction.value, cid.value, replicate),
            fn=optimize_design,
            kwargs={
                "cid": cid,
                "domain": domain,
                "restriction": restriction,
                "sa_cfg": sa_cfg,
                "dopt_cfg": dopt_cfg,
                "scale": scale,
                "seed": task_seed(seed, domain.label, restriction.value, cid.value, replicate=replicate),
            },
        )
        for domain in domains
        for restriction in restrictions
        for cid in criteria
        for replicate in range(replicates)
    ]


def sequential_tasks(
    seed: int,
    domains: List[DomainSpec],
    strategies: List[ExtensionStrategy],
    criteria: List[CriterionId],
    replicates: int,
    iterations: int,
    sa_cfg: SAConfig,
    dopt_cfg: DoptConfig,
    scale: DistanceScale
) -> List[Task]:
    """domain × strategy × criterion × replicate 的序列擴充任務"""
    return [
        Task(
            task_id=(domain.label, strategy.value, cid.value, replicate),
            fn=sequential_design,
            kwargs={
                "cid": cid,
                "domain": domain,
                "strategy": strategy,
                "iterations": iterations,
                "sa_cfg": sa_cfg,
                "dopt_cfg": dopt_cfg,
                "scale": scale,
                "seed": task_seed(
                    seed, "sequential", domain.label, strategy.value, cid.value, replicate=replicate
                ),
            },
        )
        for domain in domains
        for strategy in strategies
        for cid in criteria
        for replicate in range(replicates)
    ]
