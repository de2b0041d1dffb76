"""
Analytical suite - 15 個雙參數單調函數

涵蓋平面、單變數主導、乘積、指數、飽和與陡峭轉換等形狀，
定義在單位正方形上，每個座標方向都嚴格單調。
完整網格的參考相關係數可由 analytical_reference_table() 計算，
並以 `python main.py fixtures` 寫入 benchmarks/fixtures/。
"""
from functools import lru_cache
from pathlib import Path
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np

from errors import DomainError
from models import DomainSpec
from .base import ResponseModel
from utils.file_utils import read_json, write_json
from utils.logger import get_logger

DEFAULT_DOMAIN = DomainSpec.square(10, 2)

Formula = Callable[[np.ndarray, np.ndarray], np.ndarray]


def _logistic(v: np.ndarray) -> np.ndarray:
    return 1.0 / (1.0 + np.exp(-v))


# ==================== 函數定義 ====================
# 以模組層級函式定義，方便 worker 之間 pickle

def _linear(x1, x2): return x1 + x2
def _x1_dominant(x1, x2): return x1 + 0.01 * x2
def _x2_weighted(x1, x2): return 0.2 * x1 + x2
def _product(x1, x2): return (1.0 + x1) * (1.0 + x2)
def _cubic(x1, x2): return x1 ** 3 + x2
def _sqrt(x1, x2): return np.sqrt(x1) + 0.5 * x2
def _exp_x1(x1, x2): return np.exp(3.0 * x1) + x2
def _exp_sum(x1, x2): return np.exp(x1 + 2.0 * x2)
def _saturating(x1, x2): return 1.0 - np.exp(-5.0 * x1) + 0.3 * x2
def _tanh(x1, x2): return np.tanh(3.0 * x1) + np.tanh(3.0 * x2)
def _step_x1(x1, x2): return _logistic(20.0 * (x1 - 0.5)) + 0.2 * x2
def _step_diagonal(x1, x2): return _logistic(15.0 * (x1 + x2 - 1.0))
def _log(x1, x2): return np.log1p(9.0 * x1) + np.log1p(x2)
def _decreasing_x2(x1, x2): return x1 - x2 ** 2
def _ratio(x1, x2): return (1.0 + x1 ** 2) / (2.0 - x2)


# (model_id, formula 文字, 函式, 各座標的單調方向)
_SUITE: List[Tuple[str, str, Formula, Tuple[int, int]]] = [
    ("linear", "x1 + x2", _linear, (1, 1)),
    ("x1-dominant", "x1 + 0.01*x2", _x1_dominant, (1, 1)),
    ("x2-weighted", "0.2*x1 + x2", _x2_weighted, (1, 1)),
    ("product", "(1 + x1)*(1 + x2)", _product, (1, 1)),
    ("cubic", "x1^3 + x2", _cubic, (1, 1)),
    ("sqrt", "sqrt(x1) + 0.5*x2", _sqrt, (1, 1)),
    ("exp-x1", "exp(3*x1) + x2", _exp_x1, (1, 1)),
    ("exp-sum", "exp(x1 + 2*x2)", _exp_sum, (1, 1)),
    ("saturating", "1 - exp(-5*x1) + 0.3*x2", _saturating, (1, 1)),
    ("tanh", "tanh(3*x1) + tanh(3*x2)", _tanh, (1, 1)),
    ("step-x1", "logistic(20*(x1 - 0.5)) + 0.2*x2", _step_x1, (1, 1)),
    ("step-diagonal", "logistic(15*(x1 + x2 - 1))", _step_diagonal, (1, 1)),
    ("log", "log(1 + 9*x1) + log(1 + x2)", _log, (1, 1)),
    ("decreasing-x2", "x1 - x2^2", _decreasing_x2, (1, -1)),
    ("ratio", "(1 + x1^2)/(2 - x2)", _ratio, (1, 1)),
]


class AnalyticalModel(ResponseModel):
    """
    單位正方形上的雙參數單調函數

    Attributes:
        index: 1..15
        model_id: 名稱，例如 "linear"
        formula: 公式文字
        directions: 每個座標的單調方向（+1 遞增、−1 遞減）
    """

    response_names = ["z"]

    def __init__(
        self,
        index: int,
        model_id: str,
        formula: str,
        func: Formula,
        directions: Tuple[int, int],
        domain: Optional[DomainSpec] = None
    ):
        self.index = index
        self.model_id = model_id
        self.formula = formula
        self.func = func
        self.directions = directions
        self._domain = domain or DEFAULT_DOMAIN

    @property
    def domain(self) -> DomainSpec:
        return self._domain

    def _evaluate(self, values: np.ndarray) -> np.ndarray:
        return self.func(values[:, 0], values[:, 1])

    def to_dict(self) -> Dict[str, object]:
        return {
            "index": self.index,
            "model_id": self.model_id,
            "formula": self.formula,
            "directions": list(self.directions),
        }


def analytical_suite(domain: Optional[DomainSpec] = None) -> List[AnalyticalModel]:
    """
    建立 15 個分析模型

    Args:
        domain: 二維設計空間（預設 10×10，沒有物理值時以 [0,1] 等距座標計算）
    """
    domain = domain or DEFAULT_DOMAIN
    if domain.k != 2:
        raise DomainError(f"Analytical models are two-dimensional, got k={domain.k}")
    return [
        AnalyticalModel(i + 1, model_id, formula, func, directions, domain)
        for i, (model_id, formula, func, directions) in enumerate(_SUITE)
    ]


def get_model(model_id: str, domain: Optional[DomainSpec] = None) -> AnalyticalModel:
    """以名稱取得分析模型"""
    for model in analytical_suite(domain):
        if model.model_id == model_id:
            return model
    raise KeyError(f"Unknown analytical model: {model_id}")


# ==================== 參考值 ====================

@lru_cache(maxsize=8)
def analytical_reference_table(domain: DomainSpec = DEFAULT_DOMAIN) -> Dict[str, np.ndarray]:
    """
    每個模型的完整網格參考相關係數（以 domain 快取）

    Returns:
        Dict[str, np.ndarray]: model_id → (1, 2) 矩陣
    """
    from doe.sensitivity import full_design_reference

    return {
        model.model_id: full_design_reference(domain, model)
        for model in analytical_suite(domain)
    }


def fixture_path(fixtures_dir: Path, domain: DomainSpec) -> Path:
    return Path(fixtures_dir) / f"analytical_{domain.label}.json"


def write_fixtures(fixtures_dir: Path, domain: DomainSpec = DEFAULT_DOMAIN) -> Path:
    """將參考相關係數與公式寫入 fixture 檔案"""
    table = analytical_reference_table(domain)
    payload = {
        "domain": domain.to_dict(),
        "models": [
            {**model.to_dict(), "reference": table[model.model_id].ravel().tolist()}
            for model in analytical_suite(domain)
        ],
    }
    path = fixture_path(fixtures_dir, domain)
    write_json(path, payload)
    get_logger().info(f"Analytical fixtures written: {path}")
    return path


def load_fixtures(fixtures_dir: Path, domain: DomainSpec = DEFAULT_DOMAIN) -> Dict[str, np.ndarray]:
    """
    讀取 fixture；不存在時即時計算

    Returns:
        Dict[str, np.ndarray]: model_id → (1, 2) 矩陣
    """
    path = fixture_path(fixtures_dir, domain)
    if not path.exists():
        get_logger().debug(f"No fixture at {path}, computing full-design references")
        return analytical_reference_table(domain)
    payload = read_json(path)
    return {
        entry["model_id"]: np.asarray(entry["reference"], dtype=float).reshape(1, -1)
        for entry in payload["models"]
    }
