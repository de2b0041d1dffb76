"""
Design quality criteria

匯入各模組以觸發 @criterion 註冊。
"""
from .registry import criterion, evaluate, safe_evaluate, bind_evaluator, get_evaluator, list_criteria
from .space_filling import eval_ae, eval_emm, eval_ml2
from .regression import (
    build_regression_matrix, eval_dopt, polynomial_exponents, auto_degree
)
from .orthogonality import (
    eval_cn, eval_pmcc, eval_srcc, eval_krcc, pearson, spearman, kendall_tau,
    spearman_from_ranks, has_ties
)
from .landscape import LandscapeScan, landscape_scan

__all__ = [
    # registry
    "criterion",
    "evaluate",
    "safe_evaluate",
    "bind_evaluator",
    "get_evaluator",
    "list_criteria",
    # space filling
    "eval_ae",
    "eval_emm",
    "eval_ml2",
    # regression
    "build_regression_matrix",
    "eval_dopt",
    "polynomial_exponents",
    "auto_degree",
    # orthogonality
    "eval_cn",
    "eval_pmcc",
    "eval_srcc",
    "eval_krcc",
    "pearson",
    "spearman",
    "kendall_tau",
    "spearman_from_ranks",
    "has_ties",
    # landscape
    "LandscapeScan",
    "landscape_scan",
]
