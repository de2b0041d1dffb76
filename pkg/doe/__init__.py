"""
Optimal discrete design of experiments

- core: 正規化、距離、投影與 LH 檢查
- criteria: 八種品質準則與 landscape 掃描
- sampling: 隨機起始設計
- annealer: 模擬退火
- sequential: 批次擴充
- sensitivity: SRCC 敏感度分析
"""
from .core import (
    normalize_unit, code_symmetric, center_scale, coordinates, ranks,
    pairwise_sq_distances, min_distances, min_distance_sum,
    project, redundant_count, level_occupancy, has_uniform_occupancy, is_latin_hypercube
)
from .criteria import evaluate, safe_evaluate, list_criteria, landscape_scan, LandscapeScan
from .sampling import random_free, random_lh, replicated_lh, mixed_lh, round_levels, random_design
from .annealer import metropolis_accept, propose_free_move, propose_lh_swap, anneal
from .sequential import extend, extend_free, extend_lh, design_at_stage
from .sensitivity import (
    param_response_srcc, response_srcc, correlation_error,
    full_design_reference, monte_carlo_reference, estimate_report
)

__all__ = [
    # core
    "normalize_unit",
    "code_symmetric",
    "center_scale",
    "coordinates",
    "ranks",
    "pairwise_sq_distances",
    "min_distances",
    "min_distance_sum",
    "project",
    "redundant_count",
    "level_occupancy",
    "has_uniform_occupancy",
    "is_latin_hypercube",
    # criteria
    "evaluate",
    "safe_evaluate",
    "list_criteria",
    "landscape_scan",
    "LandscapeScan",
    # sampling
    "random_free",
    "random_lh",
    "replicated_lh",
    "mixed_lh",
    "round_levels",
    "random_design",
    # annealer
    "metropolis_accept",
    "propose_free_move",
    "propose_lh_swap",
    "anneal",
    # sequential
    "extend",
    "extend_free",
    "extend_lh",
    "design_at_stage",
    # sensitivity
    "param_response_srcc",
    "response_srcc",
    "correlation_error",
    "full_design_reference",
    "monte_carlo_reference",
    "estimate_report",
]
