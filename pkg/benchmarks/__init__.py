"""
Benchmark response models

- analytical: 15 個雙參數單調函數
- truss: 十桿與 25 桿桁架（直接剛度法）
"""
from .base import ResponseModel
from .analytical import (
    AnalyticalModel, analytical_suite, get_model, analytical_reference_table,
    write_fixtures, load_fixtures, DEFAULT_DOMAIN
)
from .truss import (
    TrussModel, TrussResponse, assemble_stiffness, solve_displacements, element_stresses,
    truss_solve, truss_solve_batch, ten_bar, twenty_five_bar, get_truss, resolve_truss, TRUSS_MODELS
)

__all__ = [
    "ResponseModel",
    # analytical
    "AnalyticalModel",
    "analytical_suite",
    "get_model",
    "analytical_reference_table",
    "write_fixtures",
    "load_fixtures",
    "DEFAULT_DOMAIN",
    # truss
    "TrussModel",
    "TrussResponse",
    "assemble_stiffness",
    "solve_displacements",
    "element_stresses",
    "truss_solve",
    "truss_solve_batch",
    "ten_bar",
    "twenty_five_bar",
    "get_truss",
    "resolve_truss",
    "TRUSS_MODELS",
]
