"""
Criterion Registry - 準則評估函式的註冊與分派

利用裝飾器註冊評估函式，並以 inspect 讀取函式簽名，
evaluate() 只傳入該函式需要的參數（domain / cfg / scale）。
"""
import inspect
import math
from typing import Callable, Optional

from errors import DoeError
from models import CriterionId, Design, DistanceScale, DomainSpec, DoptConfig


# 全域 registry
_registry: dict[CriterionId, Callable[..., float]] = {}
_parameters: dict[CriterionId, frozenset[str]] = {}


def criterion(cid: CriterionId) -> Callable:
    """
    裝飾器：註冊準則評估函式

    Example:
        @criterion(CriterionId.EMM)
        def eval_emm(design: Design, domain=None, scale=DistanceScale.INDEX) -> float:
            ...
    """
    def decorator(func: Callable[..., float]) -> Callable[..., float]:
        if cid in _registry:
            raise ValueError(f"Criterion already registered: {cid.value}")
        _registry[cid] = func
        _parameters[cid] = frozenset(inspect.signature(func).parameters)
        return func
    return decorator


def get_evaluator(cid: CriterionId) -> Callable[..., float]:
    if cid not in _registry:
        raise KeyError(f"Criterion not registered: {cid}")
    return _registry[cid]


def list_criteria() -> list[CriterionId]:
    """列出所有已註冊的準則（依 CriterionId 定義順序）"""
    return [cid for cid in CriterionId if cid in _registry]


def evaluate(
    cid: CriterionId,
    design: Design,
    domain: Optional[DomainSpec] = None,
    dopt_cfg: Optional[DoptConfig] = None,
    scale: DistanceScale = DistanceScale.INDEX
) -> float:
    """
    以越小越好的方向評估任一準則

    Args:
        cid: 準則
        design: 設計
        domain: 設計空間（ML2 / CN 必需，DOPT 用於座標編碼）
        dopt_cfg: D-optimality 配置（預設 DoptConfig()）
        scale: AE / EMM 的距離尺度

    Raises:
        KeyError: 準則未註冊
        DoeError: 評估函式的前置條件不成立
    """
    func = get_evaluator(cid)
    available = {
        "domain": domain,
        "cfg": dopt_cfg if dopt_cfg is not None else DoptConfig(),
        "scale": scale,
    }
    kwargs = {name: value for name, value in available.items() if name in _parameters[cid]}
    return float(func(design, **kwargs))


def bind_evaluator(
    cid: CriterionId,
    domain: Optional[DomainSpec] = None,
    dopt_cfg: Optional[DoptConfig] = None,
    scale: DistanceScale = DistanceScale.INDEX
) -> Callable[[Design], float]:
    """預先解析評估函式與參數，回傳 design → 值 的函式（退化設計為 +inf）"""
    func = get_evaluator(cid)
    available = {
        "domain": domain,
        "cfg": dopt_cfg if dopt_cfg is not None else DoptConfig(),
        "scale": scale,
    }
    kwargs = {name: value for name, value in available.items() if name in _parameters[cid]}

    def bound(design: Design) -> float:
        try:
            value = float(func(design, **kwargs))
        except DoeError:
            return math.inf
        return math.inf if math.isnan(value) else value

    return bound


def safe_evaluate(
    cid: CriterionId,
    design: Design,
    domain: Optional[DomainSpec] = None,
    dopt_cfg: Optional[DoptConfig] = None,
    scale: DistanceScale = DistanceScale.INDEX
) -> float:
    """最佳化迴圈用：退化設計回傳 +inf"""
    return bind_evaluator(cid, domain, dopt_cfg, scale)(design)
