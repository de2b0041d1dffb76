"""
Truss models - 線彈性桁架的直接剛度法求解

單位：lb, in, psi；載重以 kips 定義並在建構時轉換為 lb。
回應為總重 w、最大位移分量 d（自由 DOF 的 |u| 最大值）與最大軸向應力 s。
"""
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from errors import DomainError, MechanismError
from models import DomainSpec
from .base import ResponseModel
from utils.file_utils import read_json, write_json

KIPS = 1000.0

# 每次批次求解的最大設計數，控制 (b, dof, dof) 暫存陣列的大小
SOLVE_CHUNK = 10_000

TEN_BAR_AREAS: Tuple[float, ...] = (
    1.62, 1.80, 1.99, 2.13, 2.38, 2.62, 2.63, 2.83, 2.88, 3.09,
    3.13, 3.38, 3.47, 3.55, 3.63, 3.84, 3.87, 3.88, 4.18, 4.22,
    4.49, 4.59, 4.80, 4.97, 5.12, 5.74, 7.22, 7.97, 11.50, 13.50,
    13.90, 14.20, 15.50, 16.00, 16.90, 18.80, 19.90, 22.00, 22.90, 26.50,
    30.00, 33.50,
)

TWENTY_FIVE_BAR_AREAS: Tuple[float, ...] = tuple(
    [round(0.1 * i, 1) for i in range(1, 27)] + [2.8, 3.0, 3.2, 3.4]
)


@dataclass(frozen=True)
class TrussResponse:
    """w: 總重 (lb)，d: 最大位移分量 (in)，s: 最大軸向應力 (psi)"""
    w: float
    d: float
    s: float

    def as_array(self) -> np.ndarray:
        return np.array([self.w, self.d, self.s])

    def to_dict(self) -> Dict[str, float]:
        return {"w": self.w, "d": self.d, "s": self.s}


@dataclass(eq=False)
class TrussModel(ResponseModel):
    """
    桁架模型

    Attributes:
        model_id: 模型名稱
        nodes: (N, dim) 節點座標 (in)
        elements: (E, 2) 桿件兩端節點（0-indexed）
        supports: (N, dim) True 表示該 DOF 固定
        loads: (N, dim) 節點載重 (lb)
        groups: (E,) 桿件所屬的設計變數
        area_levels: 每個設計變數的可用斷面積 (in²)
        youngs_modulus: E (psi)
        specific_weight: γ (lb/in³)
    """
    model_id: str
    nodes: np.ndarray
    elements: np.ndarray
    supports: np.ndarray
    loads: np.ndarray
    groups: np.ndarray
    area_levels: Tuple[Tuple[float, ...], ...]
    youngs_modulus: float = 1e7
    specific_weight: float = 0.1
    response_names: List[str] = field(default_factory=lambda: ["w", "d", "s"])

    _lengths: np.ndarray = field(init=False, repr=False)
    _cosines: np.ndarray = field(init=False, repr=False)
    _dofs: np.ndarray = field(init=False, repr=False)
    _free: np.ndarray = field(init=False, repr=False)
    _free_stiffness: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        self.nodes = np.asarray(self.nodes, dtype=float)
        self.elements = np.asarray(self.elements, dtype=np.int64)
        self.supports = np.asarray(self.supports, dtype=bool)
        self.loads = np.asarray(self.loads, dtype=float)
        self.groups = np.asarray(self.groups, dtype=np.int64)
        self.area_levels = tuple(tuple(float(a) for a in levels) for levels in self.area_levels)

        n_nodes, dim = self.nodes.shape
        if self.supports.shape != (n_nodes, dim) or self.loads.shape != (n_nodes, dim):
            raise DomainError("supports and loads must match the node coordinate shape")
        if self.groups.shape != (self.elements.shape[0],):
            raise DomainError("Every element needs exactly one group")
        if self.groups.min() < 0 or self.groups.max() >= len(self.area_levels):
            raise DomainError("Group index outside the design variables")
        if set(self.groups.tolist()) != set(range(len(self.area_levels))):
            raise DomainError("Every design variable must control at least one element")

        delta = self.nodes[self.elements[:, 1]] - self.nodes[self.elements[:, 0]]
        self._lengths = np.linalg.norm(delta, axis=1)
        if np.any(self._lengths <= 0):
            raise DomainError("Zero-length element")
        self._cosines = delta / self._lengths[:, None]

        local = np.arange(dim)
        self._dofs = np.hstack([
            self.elements[:, :1] * dim + local, self.elements[:, 1:] * dim + local
        ])
        self._free = np.flatnonzero(~self.supports.ravel())

        # 每根桿件在自由 DOF 上的單位斷面積剛度
        position = np.full(n_nodes * dim, -1)
        position[self._free] = np.arange(self._free.size)
        nf = self._free.size
        self._free_stiffness = np.zeros((self.elements.shape[0], nf, nf))
        for e, unit in enumerate(self._unit_element_matrices()):
            idx = position[self._dofs[e]]
            keep = idx >= 0
            self._free_stiffness[e][np.ix_(idx[keep], idx[keep])] += unit[np.ix_(keep, keep)]

    # ==================== 幾何 ====================

    @property
    def dim(self) -> int:
        return self.nodes.shape[1]

    @property
    def dof_count(self) -> int:
        return self.nodes.size

    @property
    def free_dofs(self) -> np.ndarray:
        return self._free

    @property
    def lengths(self) -> np.ndarray:
        return self._lengths

    @property
    def variable_count(self) -> int:
        return len(self.area_levels)

    @property
    def domain(self) -> DomainSpec:
        return DomainSpec(
            levels=tuple(len(levels) for levels in self.area_levels),
            values=self.area_levels,
            names=tuple(f"A{i + 1}" for i in range(self.variable_count)),
        )

    def _unit_element_matrices(self) -> np.ndarray:
        """(E, 2·dim, 2·dim)：E/L · [[ccᵀ, −ccᵀ], [−ccᵀ, ccᵀ]]"""
        outer = np.einsum("ei,ej->eij", self._cosines, self._cosines)
        block = np.block([[outer, -outer], [-outer, outer]])
        return block * (self.youngs_modulus / self._lengths)[:, None, None]

    def element_areas(self, areas: np.ndarray) -> np.ndarray:
        """設計變數 → 每根桿件的斷面積（支援批次）"""
        areas = np.asarray(areas, dtype=float)
        if areas.shape[-1] != self.variable_count:
            raise DomainError(
                f"{self.model_id}: expected {self.variable_count} areas, got {areas.shape[-1]}"
            )
        if np.any(areas <= 0):
            raise DomainError("Cross-sectional areas must be positive")
        return areas[..., self.groups]

    def weight(self, areas: np.ndarray) -> np.ndarray:
        """w = Σ γ·A_e·L_e"""
        return self.specific_weight * self.element_areas(areas) @ self._lengths

    # ==================== ResponseModel ====================

    def _evaluate(self, values: np.ndarray) -> np.ndarray:
        return truss_solve_batch(self, values)

    # ==================== 序列化 ====================

    def to_dict(self) -> Dict[str, Any]:
        return {
            "model_id": self.model_id,
            "nodes": self.nodes.tolist(),
            "elements": self.elements.tolist(),
            "supports": self.supports.tolist(),
            "loads_lb": self.loads.tolist(),
            "groups": self.groups.tolist(),
            "area_levels": [list(levels) for levels in self.area_levels],
            "youngs_modulus": self.youngs_modulus,
            "specific_weight": self.specific_weight,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "TrussModel":
        return cls(
            model_id=data["model_id"],
            nodes=np.asarray(data["nodes"]),
            elements=np.asarray(data["elements"]),
            supports=np.asarray(data["supports"]),
            loads=np.asarray(data["loads_lb"]),
            groups=np.asarray(data["groups"]),
            area_levels=tuple(tuple(levels) for levels in data["area_levels"]),
            youngs_modulus=float(data.get("youngs_modulus", 1e7)),
            specific_weight=float(data.get("specific_weight", 0.1)),
        )

    def save(self, path: Path) -> Path:
        return write_json(path, self.to_dict())

    @classmethod
    def load(cls, path: Path) -> "TrussModel":
        return cls.from_dict(read_json(path))


# ============================================================
# 求解
# ============================================================

def assemble_stiffness(model: TrussModel, areas: Sequence[float]) -> np.ndarray:
    """組裝完整（未套用支承）的全域剛度矩陣"""
    a = model.element_areas(areas)
    k = np.zeros((model.dof_count, model.dof_count))
    for e, unit in enumerate(model._unit_element_matrices()):
        dofs = model._dofs[e]
        k[np.ix_(dofs, dofs)] += a[e] * unit
    return k


def solve_displacements(model: TrussModel, areas: Sequence[float]) -> np.ndarray:
    """
    求解節點位移（完整 DOF 向量，固定 DOF 為 0）

    Raises:
        MechanismError: 套用支承後的剛度矩陣奇異
    """
    k = assemble_stiffness(model, areas)
    free = model.free_dofs
    k_free = k[np.ix_(free, free)]
    if np.linalg.matrix_rank(k_free) < free.size:
        raise MechanismError(f"{model.model_id}: constrained stiffness matrix is singular")
    u = np.zeros(model.dof_count)
    u[free] = np.linalg.solve(k_free, model.loads.ravel()[free])
    return u


def element_stresses(model: TrussModel, displacements: np.ndarray) -> np.ndarray:
    """σ_e = E · (c · (u_j − u_i)) / L_e（支援批次位移）"""
    u = np.asarray(displacements, dtype=float).reshape(*np.shape(displacements)[:-1], -1, model.dim)
    elongation = np.sum(
        (u[..., model.elements[:, 1], :] - u[..., model.elements[:, 0], :]) * model._cosines,
        axis=-1,
    )
    return model.youngs_modulus * elongation / model.lengths


def truss_solve(model: TrussModel, areas: Sequence[float]) -> TrussResponse:
    """
    單一設計的直接剛度法求解

    Raises:
        DomainError: 斷面積數量不符或非正值
        MechanismError: 結構為機構
    """
    u = solve_displacements(model, areas)
    stress = element_stresses(model, u)
    return TrussResponse(
        w=float(model.weight(areas)),
        d=float(np.max(np.abs(u[model.free_dofs]))),
        s=float(np.max(np.abs(stress))),
    )


def truss_solve_batch(model: TrussModel, areas: np.ndarray) -> np.ndarray:
    """
    批次求解

    Args:
        model: 桁架模型
        areas: (b, 變數數) 斷面積矩陣

    Returns:
        np.ndarray: (b, 3) 的 [w, d, s]

    Raises:
        MechanismError: 任一設計的剛度矩陣奇異
    """
    areas = np.atleast_2d(np.asarray(areas, dtype=float))
    out = np.empty((areas.shape[0], 3))
    f_free = model.loads.ravel()[model.free_dofs]

    for start in range(0, areas.shape[0], SOLVE_CHUNK):
        chunk = areas[start:start + SOLVE_CHUNK]
        a = model.element_areas(chunk)
        k = np.einsum("be,eij->bij", a, model._free_stiffness)
        try:
            u_free = np.linalg.solve(k, np.broadcast_to(f_free, (chunk.shape[0], f_free.size))[..., None])[..., 0]
        except np.linalg.LinAlgError as e:
            raise MechanismError(f"{model.model_id}: constrained stiffness matrix is singular") from e
        u = np.zeros((chunk.shape[0], model.dof_count))
        u[:, model.free_dofs] = u_free
        out[start:start + chunk.shape[0], 0] = model.weight(chunk)
        out[start:start + chunk.shape[0], 1] = np.max(np.abs(u_free), axis=1)
        out[start:start + chunk.shape[0], 2] = np.max(np.abs(element_stresses(model, u)), axis=1)
    return out


# ============================================================
# 基準結構
# ============================================================

def ten_bar(area_levels: Optional[Sequence[float]] = None) -> TrussModel:
    """
    十桿平面懸臂桁架

    節點 4、5 (x = 0) 固定於牆面，兩個下緣自由節點各受 100 kips 向下載重。
    """
    levels = tuple(area_levels or TEN_BAR_AREAS)
    nodes = np.array([
        [720.0, 360.0], [720.0, 0.0],
        [360.0, 360.0], [360.0, 0.0],
        [0.0, 360.0], [0.0, 0.0],
    ])
    elements = np.array([
        [2, 4], [0, 2], [3, 5], [1, 3], [2, 3],
        [0, 1], [3, 4], [2, 5], [1, 2], [0, 3],
    ])
    supports = np.zeros_like(nodes, dtype=bool)
    supports[[4, 5]] = True
    loads = np.zeros_like(nodes)
    loads[[1, 3], 1] = -100.0 * KIPS
    return TrussModel(
        model_id="ten-bar",
        nodes=nodes,
        elements=elements,
        supports=supports,
        loads=loads,
        groups=np.arange(10),
        area_levels=(levels,) * 10,
    )


# 25 桿空間塔架的八個對稱群組（1-indexed 節點對）
_TWENTY_FIVE_BAR_GROUPS: List[List[Tuple[int, int]]] = [
    [(1, 2)],
    [(1, 4), (2, 3), (1, 5), (2, 6)],
    [(2, 5), (2, 4), (1, 3), (1, 6)],
    [(3, 6), (4, 5)],
    [(3, 4), (5, 6)],
    [(3, 10), (6, 7), (4, 9), (5, 8)],
    [(3, 8), (4, 7), (6, 9), (5, 10)],
    [(3, 7), (4, 8), (5, 9), (6, 10)],
]


def twenty_five_bar(area_levels: Optional[Sequence[float]] = None) -> TrussModel:
    """
    25 桿空間輸電塔桁架

    節點 7–10 (z = 0) 固定；桿件依對稱性分為八組，每組一個設計變數。
    """
    levels = tuple(area_levels or TWENTY_FIVE_BAR_AREAS)
    nodes = np.array([
        [-37.5, 0.0, 200.0], [37.5, 0.0, 200.0],
        [-37.5, 37.5, 100.0], [37.5, 37.5, 100.0],
        [37.5, -37.5, 100.0], [-37.5, -37.5, 100.0],
        [-100.0, 100.0, 0.0], [100.0, 100.0, 0.0],
        [100.0, -100.0, 0.0], [-100.0, -100.0, 0.0],
    ])
    elements, groups = [], []
    for g, members in enumerate(_TWENTY_FIVE_BAR_GROUPS):
        for a, b in members:
            elements.append((a - 1, b - 1))
            groups.append(g)
    supports = np.zeros_like(nodes, dtype=bool)
    supports[6:] = True
    loads = np.zeros_like(nodes)
    loads[0] = [1.0 * KIPS, -10.0 * KIPS, -10.0 * KIPS]
    loads[1] = [0.0, -10.0 * KIPS, -10.0 * KIPS]
    loads[2] = [0.5 * KIPS, 0.0, 0.0]
    loads[5] = [0.6 * KIPS, 0.0, 0.0]
    return TrussModel(
        model_id="twenty-five-bar",
        nodes=nodes,
        elements=np.array(elements),
        supports=supports,
        loads=loads,
        groups=np.array(groups),
        area_levels=(levels,) * len(_TWENTY_FIVE_BAR_GROUPS),
    )


TRUSS_MODELS = {
    "ten-bar": ten_bar,
    "twenty-five-bar": twenty_five_bar,
}


def get_truss(model_id: str) -> TrussModel:
    if model_id not in TRUSS_MODELS:
        raise KeyError(f"Unknown truss model: {model_id}")
    return TRUSS_MODELS[model_id]()


def resolve_truss(ref: str) -> TrussModel:
    """
    以模型名稱或 TrussModel JSON 檔案路徑取得模型

    Raises:
        KeyError: 未知的模型名稱
        DomainError: JSON 檔案不存在或內容無效
    """
    if ref in TRUSS_MODELS:
        return get_truss(ref)
    path = Path(ref)
    if path.suffix.lower() != ".json":
        raise KeyError(f"Unknown truss model: {ref}")
    if not path.exists():
        raise DomainError(f"Truss model file not found: {path}")
    try:
        return TrussModel.load(path)
    except (KeyError, TypeError, ValueError) as e:
        raise DomainError(f"Invalid truss model file {path}: {e}") from e
