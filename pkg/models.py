"""
Data models for doe-chan

包含所有共用的資料結構：
- DomainSpec / Design: 離散設計空間與設計矩陣
- CriterionId / DoptConfig: 品質準則
- SAConfig / RngSeed / OptResult: 模擬退火
- ExtensionPlan: 序列擴充
- SensitivityReport / BoxplotStats: 敏感度分析與統計
"""
import math
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from errors import DomainError


# ============================================================
# Enums
# ============================================================

class CriterionId(Enum):
    """八種（越小越好）設計品質準則"""
    AE = "AE"
    EMM = "EMM"
    ML2 = "ML2"
    DOPT = "DOPT"
    CN = "CN"
    PMCC = "PMCC"
    SRCC = "SRCC"
    KRCC = "KRCC"

    @classmethod
    def parse(cls, text: str) -> "CriterionId":
        """不分大小寫解析準則名稱"""
        key = text.strip().upper()
        try:
            return cls(key)
        except ValueError:
            raise DomainError(
                f"Unknown criterion: {text!r} (expected one of {', '.join(c.value for c in cls)})"
            ) from None

    @classmethod
    def parse_list(cls, text: str) -> List["CriterionId"]:
        """解析逗號分隔的準則清單，例如 "AE,EMM,ml2" """
        return [cls.parse(part) for part in text.split(",") if part.strip()]

    @property
    def space_filling(self) -> bool:
        return self in (CriterionId.AE, CriterionId.EMM, CriterionId.ML2, CriterionId.DOPT)


class Restriction(Enum):
    """設計限制類型"""
    FREE = "free"
    LH = "lh"
    MIXED = "mixed"


class ExtensionStrategy(Enum):
    """序列擴充策略"""
    FREE = "free"
    LH_PRESERVING = "lh"


class DistanceScale(Enum):
    """距離計算尺度：level index 或 [0,1] 正規化座標"""
    INDEX = "index"
    UNIT = "unit"


# ============================================================
# Domain / Design
# ============================================================

@dataclass(frozen=True)
class DomainSpec:
    """
    離散設計空間

    每個維度有 levels[i] 個離散水準，可選擇附上嚴格遞增的物理值。
    """
    levels: Tuple[int, ...]
    values: Optional[Tuple[Tuple[float, ...], ...]] = None
    names: Optional[Tuple[str, ...]] = None

    def __post_init__(self):
        levels = tuple(int(m) for m in self.levels)
        if not levels:
            raise DomainError("DomainSpec needs at least one dimension")
        if any(m < 2 for m in levels):
            raise DomainError(f"Every level count must be >= 2, got {levels}")
        object.__setattr__(self, "levels", levels)

        if self.values is not None:
            values = tuple(tuple(float(v) for v in column) for column in self.values)
            if len(values) != len(levels):
                raise DomainError(
                    f"values given for {len(values)} dimensions, domain has {len(levels)}"
                )
            for dim, (m, column) in enumerate(zip(levels, values)):
                if len(column) != m:
                    raise DomainError(
                        f"Dimension {dim}: {len(column)} values for {m} levels"
                    )
                if np.any(np.diff(column) <= 0):
                    raise DomainError(f"Dimension {dim}: values must be strictly increasing")
            object.__setattr__(self, "values", values)

        if self.names is not None:
            names = tuple(str(n) for n in self.names)
            if len(names) != len(levels):
                raise DomainError("names length must equal the dimension count")
            object.__setattr__(self, "names", names)

    @property
    def k(self) -> int:
        return len(self.levels)

    @property
    def cell_count(self) -> int:
        return math.prod(self.levels)

    @property
    def is_square(self) -> bool:
        return len(set(self.levels)) == 1

    @property
    def label(self) -> str:
        return "x".join(str(m) for m in self.levels)

    @classmethod
    def square(cls, m: int, k: int) -> "DomainSpec":
        return cls(levels=(m,) * k)

    @classmethod
    def parse(cls, text: str) -> "DomainSpec":
        """解析 "7x10" 形式的網格描述"""
        try:
            levels = tuple(int(part) for part in text.lower().replace("×", "x").split("x"))
        except ValueError:
            raise DomainError(f"Invalid domain string: {text!r}") from None
        return cls(levels=levels)

    def full_grid(self) -> np.ndarray:
        """列舉所有網格點（最後一維變化最快）"""
        return np.indices(self.levels).reshape(self.k, -1).T.astype(np.int64)

    def physical(self, points: np.ndarray) -> np.ndarray:
        """
        將 level index 轉換為物理值

        沒有物理值時回傳 [0,1] 等距座標。
        """
        points = np.asarray(points)
        if points.ndim != 2 or points.shape[1] != self.k:
            raise DomainError(f"Expected an (n, {self.k}) index matrix, got {points.shape}")
        if self.values is None:
            return points / (np.asarray(self.levels, dtype=float) - 1.0)
        return np.column_stack([
            np.asarray(self.values[dim])[points[:, dim]] for dim in range(self.k)
        ])

    def to_dict(self) -> Dict[str, Any]:
        return {
            "levels": list(self.levels),
            "values": [list(v) for v in self.values] if self.values is not None else None,
            "names": list(self.names) if self.names is not None else None,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "DomainSpec":
        values = data.get("values")
        names = data.get("names")
        return cls(
            levels=tuple(data["levels"]),
            values=tuple(tuple(v) for v in values) if values is not None else None,
            names=tuple(names) if names is not None else None,
        )


@dataclass
class Design:
    """
    設計矩陣：n×k 的整數 level index

    points 建立後唯讀；所有操作都回傳新的 Design。
    tags 為每個點的序列擴充批次編號（0 = 初始設計）。
    """
    points: np.ndarray
    lh_constrained: bool = False
    allow_duplicates: bool = False
    tags: Optional[np.ndarray] = None

    def __post_init__(self):
        raw = np.asarray(self.points)
        if raw.ndim == 1:
            raw = raw.reshape(-1, 1)
        if raw.ndim != 2:
            raise DomainError(f"Design points must be a 2-D matrix, got shape {raw.shape}")
        if raw.size and not np.issubdtype(raw.dtype, np.integer):
            if not np.all(np.equal(np.mod(raw, 1), 0)):
                raise DomainError("Design points must be integer level indices")
        points = np.array(raw, dtype=np.int64)
        points.setflags(write=False)
        self.points = points

        if self.tags is not None:
            tags = np.array(self.tags, dtype=np.int64).reshape(-1)
            if tags.shape[0] != points.shape[0]:
                raise DomainError("tags length must equal the point count")
            tags.setflags(write=False)
            self.tags = tags

    @property
    def n(self) -> int:
        return self.points.shape[0]

    @property
    def k(self) -> int:
        return self.points.shape[1]

    def with_points(self, points: np.ndarray, tags: Optional[np.ndarray] = None) -> "Design":
        """以新座標建立相同旗標的 Design"""
        return Design(
            points=points,
            lh_constrained=self.lh_constrained,
            allow_duplicates=self.allow_duplicates,
            tags=tags if tags is not None else self.tags,
        )

    def view(self, points: np.ndarray) -> "Design":
        """不複製也不檢查的 Design（points 須為 n×k int 矩陣），供評估迴圈使用"""
        design = object.__new__(Design)
        design.points = points
        design.lh_constrained = self.lh_constrained
        design.allow_duplicates = self.allow_duplicates
        design.tags = None
        return design

    def has_duplicates(self) -> bool:
        return np.unique(self.points, axis=0).shape[0] < self.n

    def validate(self, domain: DomainSpec) -> "Design":
        """
        檢查設計是否符合 domain

        Raises:
            DomainError: 維度不符、索引越界、LH 或重複點規則被破壞
        """
        if self.k != domain.k:
            raise DomainError(f"Design has {self.k} dimensions, domain has {domain.k}")
        levels = np.asarray(domain.levels)
        if self.n and (np.any(self.points < 0) or np.any(self.points >= levels)):
            raise DomainError("Design index outside the domain levels")
        if not self.allow_duplicates and self.has_duplicates():
            raise DomainError("Design contains duplicate points")
        if self.lh_constrained and all(m == self.n for m in domain.levels):
            for dim in range(self.k):
                if np.unique(self.points[:, dim]).shape[0] != self.n:
                    raise DomainError(f"Latin hypercube broken in dimension {dim}")
        return self

    def to_dict(self) -> Dict[str, Any]:
        return {
            "points": self.points.tolist(),
            "lh_constrained": self.lh_constrained,
            "allow_duplicates": self.allow_duplicates,
            "tags": self.tags.tolist() if self.tags is not None else None,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "Design":
        return cls(
            points=np.asarray(data["points"], dtype=np.int64),
            lh_constrained=data.get("lh_constrained", False),
            allow_duplicates=data.get("allow_duplicates", False),
            tags=data.get("tags"),
        )


# ============================================================
# Criteria 配置
# ============================================================

@dataclass(frozen=True)
class DoptConfig:
    """
    D-optimality 配置

    Attributes:
        base_degree: 完整多項式基底的次數；None 表示自動選擇欄數 ≤ n 的最大次數
        bayes_terms: 每個維度附加的高次純冪項數量（各維度相同以保持等向性）
        tau: 加在附加欄對角線上的常數，(0, 1]
        coding: "coded" 將座標轉為 [-1,1]，"unit" 轉為 [0,1]
        extra_terms: 明確指定附加項的指數組合（覆蓋 bayes_terms）
    """
    base_degree: Optional[int] = None
    bayes_terms: int = 1
    tau: float = 1.0
    coding: str = "coded"
    extra_terms: Optional[Tuple[Tuple[int, ...], ...]] = None

    def __post_init__(self):
        if not 0.0 < self.tau <= 1.0:
            raise DomainError(f"tau must lie in (0, 1], got {self.tau}")
        if self.bayes_terms < 0:
            raise DomainError("bayes_terms must be >= 0")
        if self.base_degree is not None and self.base_degree < 0:
            raise DomainError("base_degree must be >= 0")
        if self.coding not in ("coded", "unit"):
            raise DomainError(f"Unknown Dopt coding: {self.coding!r}")
        if self.extra_terms is not None:
            object.__setattr__(
                self, "extra_terms", tuple(tuple(int(e) for e in t) for t in self.extra_terms)
            )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "base_degree": self.base_degree,
            "bayes_terms": self.bayes_terms,
            "tau": self.tau,
            "coding": self.coding,
            "extra_terms": [list(t) for t in self.extra_terms] if self.extra_terms else None,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "DoptConfig":
        extra = data.get("extra_terms")
        return cls(
            base_degree=data.get("base_degree"),
            bayes_terms=data.get("bayes_terms", 1),
            tau=data.get("tau", 1.0),
            coding=data.get("coding", "coded"),
            extra_terms=tuple(tuple(t) for t in extra) if extra else None,
        )


# ============================================================
# Annealer 資料模型
# ============================================================

@dataclass(frozen=True)
class SAConfig:
    """
    模擬退火排程

    溫度每個 stage 除以 t_mlt = (t_max / t_final) ** (1 / n_reductions)；
    stage 在 stage_length 次評估後或接受 accepted_quota 次移動後結束。
    """
    t_max: float = 1e-3
    t_final: float = 1e-6
    n_reductions: int = 100
    n_max: int = 10**6
    accepted_quota: Optional[int] = None
    stage_length: Optional[int] = None

    def __post_init__(self):
        if not (self.t_max >= self.t_final > 0):
            raise DomainError(
                f"Temperatures must satisfy t_max >= t_final > 0 (got {self.t_max}, {self.t_final})"
            )
        if self.n_reductions < 1:
            raise DomainError("n_reductions must be >= 1")
        if self.n_max < self.n_reductions:
            raise DomainError("n_max must be >= n_reductions")
        if self.accepted_quota is not None and self.accepted_quota < 1:
            raise DomainError("accepted_quota must be >= 1")
        if self.stage_length is not None and self.stage_length < 1:
            raise DomainError("stage_length must be >= 1")

    @property
    def quota(self) -> int:
        return self.accepted_quota if self.accepted_quota is not None else max(1, self.n_max // 100)

    @property
    def stage(self) -> int:
        return self.stage_length if self.stage_length is not None else max(1, self.n_max // 10)

    @property
    def t_mlt(self) -> float:
        return (self.t_max / self.t_final) ** (1.0 / self.n_reductions)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "t_max": self.t_max,
            "t_final": self.t_final,
            "n_reductions": self.n_reductions,
            "n_max": self.n_max,
            "accepted_quota": self.accepted_quota,
            "stage_length": self.stage_length,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "SAConfig":
        defaults = cls()
        return cls(
            t_max=float(data.get("t_max", defaults.t_max)),
            t_final=float(data.get("t_final", defaults.t_final)),
            n_reductions=int(data.get("n_reductions", defaults.n_reductions)),
            n_max=int(data.get("n_max", defaults.n_max)),
            accepted_quota=data.get("accepted_quota"),
            stage_length=data.get("stage_length"),
        )


@dataclass(frozen=True)
class RngSeed:
    """64-bit seed + stream id；相同組合產生相同的亂數序列"""
    seed: int
    stream: int = 0

    def __post_init__(self):
        if not 0 <= self.seed < 2**64:
            raise DomainError(f"seed must be an unsigned 64-bit integer, got {self.seed}")
        if self.stream < 0:
            raise DomainError("stream must be >= 0")

    def generator(self) -> np.random.Generator:
        return np.random.default_rng(np.random.SeedSequence(self.seed, spawn_key=(self.stream,)))

    def to_dict(self) -> Dict[str, Any]:
        return {"seed": self.seed, "stream": self.stream}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "RngSeed":
        return cls(seed=int(data["seed"]), stream=int(data.get("stream", 0)))


@dataclass
class OptResult:
    """退火結果：最佳設計、最佳值、每個 stage 的最佳值歷史"""
    design: Design
    value: float
    history: List[float]
    evaluations: int
    criterion: CriterionId
    seed: Optional[RngSeed] = None
    accepted: int = 0
    reductions: int = 0
    config: Optional[SAConfig] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "criterion": self.criterion.value,
            "value": self.value,
            "design": self.design.to_dict(),
            "history": list(self.history),
            "evaluations": self.evaluations,
            "accepted": self.accepted,
            "reductions": self.reductions,
            "seed": self.seed.to_dict() if self.seed else None,
            "config": self.config.to_dict() if self.config else None,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "OptResult":
        return cls(
            design=Design.from_dict(data["design"]),
            value=float(data["value"]),
            history=[float(v) for v in data.get("history", [])],
            evaluations=int(data["evaluations"]),
            criterion=CriterionId(data["criterion"]),
            seed=RngSeed.from_dict(data["seed"]) if data.get("seed") else None,
            accepted=int(data.get("accepted", 0)),
            reductions=int(data.get("reductions", 0)),
            config=SAConfig.from_dict(data["config"]) if data.get("config") else None,
        )

    def history_rows(self, **labels: Any) -> List[Dict[str, Any]]:
        """每個 stage 一列：labels、stage 編號與該 stage 的最佳值"""
        return [{**labels, "stage": i, "best": v} for i, v in enumerate(self.history)]


# ============================================================
# Sequential 資料模型
# ============================================================

@dataclass(frozen=True)
class ExtensionPlan:
    """序列擴充計畫：每次新增 batch_size 點，共 iterations 次"""
    batch_size: int
    iterations: int
    strategy: ExtensionStrategy = ExtensionStrategy.FREE

    def __post_init__(self):
        if self.batch_size < 1:
            raise DomainError("batch_size must be >= 1")
        if self.iterations < 0:
            raise DomainError("iterations must be >= 0")

    def to_dict(self) -> Dict[str, Any]:
        return {
            "batch_size": self.batch_size,
            "iterations": self.iterations,
            "strategy": self.strategy.value,
        }


# ============================================================
# Sensitivity / Harness 資料模型
# ============================================================

@dataclass
class SensitivityReport:
    """
    敏感度分析結果

    estimates / reference 為 (回應數, 參數數) 矩陣。
    """
    estimates: np.ndarray
    reference: np.ndarray
    response_names: List[str]
    design_id: str
    model_id: str
    n: int

    def __post_init__(self):
        self.estimates = np.atleast_2d(np.asarray(self.estimates, dtype=float))
        self.reference = np.atleast_2d(np.asarray(self.reference, dtype=float))
        if self.estimates.shape != self.reference.shape:
            raise DomainError(
                f"estimate shape {self.estimates.shape} != reference shape {self.reference.shape}"
            )
        if len(self.response_names) != self.estimates.shape[0]:
            raise DomainError("response_names length must equal the response count")

    @property
    def errors(self) -> np.ndarray:
        """每個回應的 ε = mean |ρ̃ − ρ|"""
        return np.mean(np.abs(self.estimates - self.reference), axis=1)

    @property
    def mean_error(self) -> float:
        return float(np.mean(self.errors))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "design_id": self.design_id,
            "model_id": self.model_id,
            "n": self.n,
            "response_names": list(self.response_names),
            "estimates": self.estimates.tolist(),
            "reference": self.reference.tolist(),
            "errors": self.errors.tolist(),
            "mean_error": self.mean_error,
        }

    def to_rows(self, **labels: Any) -> List[Dict[str, Any]]:
        """扁平 CSV 列：每個回應一列"""
        return [
            {
                **labels,
                "design": self.design_id,
                "model": self.model_id,
                "n": self.n,
                "response": name,
                "epsilon": float(eps),
            }
            for name, eps in zip(self.response_names, self.errors)
        ]


@dataclass(frozen=True)
class BoxplotStats:
    """五數摘要"""
    min: float
    q1: float
    median: float
    q3: float
    max: float
    count: int

    def to_dict(self) -> Dict[str, Any]:
        return {
            "min": self.min,
            "q1": self.q1,
            "median": self.median,
            "q3": self.q3,
            "max": self.max,
            "count": self.count,
        }
