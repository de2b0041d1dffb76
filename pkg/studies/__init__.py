"""
Studies - 實驗流程

- tournament: 交叉評估
- projection: 投影後的重複點數
- sequential: 序列擴充
- sa-analytical / sa-truss: 敏感度分析誤差
- landscape: 固定角點的準則地形
"""
from typing import Dict, Type

from config.experiments import StudyName
from .base import BaseStudy, StudyResult
from .pool import Task, run_tasks
from .stats import boxplot_stats, grouped_boxplots, mean_max_table
from .render import (
    RenderResult, render_heatmap, render_boxplots, render_histograms, render_designs,
    write_manifest, write_table, write_document, design_rows
)
from .tasks import task_seed, optimize_design, sequential_design, scan_landscape
from .tournament import TournamentStudy, worst_replicate
from .projection import ProjectionStudy, histogram_mean
from .sequential import SequentialStudy, extension_strategies
from .sensitivity import AnalyticalSensitivityStudy, TrussSensitivityStudy
from .landscape import LandscapeStudy, dopt_variants, scenarios

STUDY_CLASSES: Dict[str, Type[BaseStudy]] = {
    StudyName.TOURNAMENT: TournamentStudy,
    StudyName.PROJECTION: ProjectionStudy,
    StudyName.SEQUENTIAL: SequentialStudy,
    StudyName.SA_ANALYTICAL: AnalyticalSensitivityStudy,
    StudyName.SA_TRUSS: TrussSensitivityStudy,
    StudyName.LANDSCAPE: LandscapeStudy,
}

__all__ = [
    "BaseStudy",
    "StudyResult",
    "STUDY_CLASSES",
    # pool
    "Task",
    "run_tasks",
    # stats
    "boxplot_stats",
    "grouped_boxplots",
    "mean_max_table",
    # render
    "RenderResult",
    "render_heatmap",
    "render_boxplots",
    "render_histograms",
    "render_designs",
    "write_manifest",
    "write_table",
    "write_document",
    "design_rows",
    # tasks
    "task_seed",
    "optimize_design",
    "sequential_design",
    "scan_landscape",
    # studies
    "TournamentStudy",
    "worst_replicate",
    "ProjectionStudy",
    "histogram_mean",
    "SequentialStudy",
    "extension_strategies",
    "AnalyticalSensitivityStudy",
    "TrussSensitivityStudy",
    "LandscapeStudy",
    "dopt_variants",
    "scenarios",
]
