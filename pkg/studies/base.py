"""
Base Study - 所有 study 共用的基礎類別

負責輸出目錄、平行 worker 數、距離尺度、seed 記錄與 run manifest。
"""
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional

from config.experiments import ExperimentConfig, get_experiment_config
from config.settings import get_config
from models import DistanceScale
from utils.file_utils import ensure_dir
from utils.logger import Operation, get_logger
from .pool import Task, run_tasks
from .render import RenderResult, write_manifest, write_table


@dataclass
class StudyResult:
    """Study 執行結果"""
    study: str
    out_dir: Path
    outputs: List[str] = field(default_factory=list)
    summary: Dict[str, Any] = field(default_factory=dict)


class BaseStudy(ABC):
    """
    Study 基礎類別

    子類別實作 execute()，以 self.run_tasks() 分派 replicate，
    並以 self.write_table() / self.record() 登記輸出檔案。
    """

    study_name: str = ""

    def __init__(
        self,
        config: Optional[ExperimentConfig] = None,
        display_name: Optional[str] = None
    ):
        """
        初始化 Study

        Args:
            config: 直接傳入配置（優先於 ExperimentConfigManager）
            display_name: 顯示名稱（用於日誌，預設使用 study_name）
        """
        self.config = config if config is not None else get_experiment_config(self.study_name)
        self.display_name = display_name or self.study_name

        settings = get_config()
        root = Path(self.config.out_dir) if self.config.out_dir else settings.outputs_dir
        self.out_dir = root / self.study_name
        self.workers = self.config.workers or settings.workers
        self.scale: DistanceScale = self.config.scale or settings.distance_scale
        self.outputs: List[str] = []
        self.seeds: Dict[str, int] = {}
        self._logger = None

    @property
    def logger(self):
        """取得 logger（延遲初始化）"""
        if self._logger is None:
            self._logger = get_logger()
        return self._logger

    # ==================== 執行 ====================

    def run(self) -> StudyResult:
        """執行 study 並寫入 manifest"""
        cfg = self.config
        self.logger.info(
            f"{self.display_name}: seed={cfg.seed} replicates={cfg.replicates} "
            f"n_max={cfg.n_max} workers={self.workers} scale={self.scale.value}"
        )
        ensure_dir(self.out_dir)
        summary = self.execute()

        manifest = write_manifest(
            self.out_dir / "manifest.json",
            config=cfg.to_dict(),
            seeds={"seed": cfg.seed, "streams": dict(sorted(self.seeds.items()))},
            outputs=self.outputs,
        )
        self.record(manifest)
        self.logger.info(f"{self.display_name}: {len(self.outputs)} files written to {self.out_dir}")
        return StudyResult(
            study=self.study_name,
            out_dir=self.out_dir,
            outputs=sorted(self.outputs),
            summary=summary,
        )

    @abstractmethod
    def execute(self) -> Dict[str, Any]:
        """執行實驗並寫入輸出，回傳摘要"""

    def run_tasks(self, tasks: List[Task], op: Operation = Operation.ANNEAL) -> List[Any]:
        """分派任務並記錄每個任務的 seed stream"""
        for task in tasks:
            seed = task.kwargs.get("seed")
            if seed is not None:
                self.seeds["/".join(str(part) for part in task.task_id)] = seed.stream
        return run_tasks(tasks, self.workers, title=self.display_name, op=op)

    # ==================== 輸出 ====================

    def record(self, result: RenderResult) -> RenderResult:
        """登記輸出檔案；失敗時記錄警告"""
        if result.success and result.path:
            self.outputs.append(str(Path(result.path).relative_to(self.out_dir)))
        elif not result.success:
            self.logger.warning(f"{self.display_name}: output skipped ({result.error})")
        return result

    def write_table(
        self,
        name: str,
        rows: List[Dict[str, Any]],
        columns: Optional[List[str]] = None
    ) -> RenderResult:
        """寫入 <out>/<study>/<name>.csv"""
        return self.record(write_table(self.out_dir / f"{name}.csv", rows, columns))
