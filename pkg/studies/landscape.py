"""
Landscape study - 固定角點後最後一點位置的準則地形

兩個情境（grid × grid 網格）：
- three-corners: 固定 (0,0)、(g−1,0)、(0,g−1)，掃描第 4 點
- four-corners: 固定四個角點，掃描第 5 點

每個準則各掃描一次，另外加上 D-optimality 的四種基底變化。

輸出：
- scans.csv: 每個 (scenario, scan, x, y) 一列
- minima.csv: 每個掃描的最小值位置
- <scenario>_<scan>.svg / .png: 灰階熱圖（黑色 = 最小值）
"""
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from config.experiments import StudyName
from models import CriterionId, DomainSpec, DoptConfig
from .base import BaseStudy
from .pool import Task
from .render import RenderResult, render_heatmap
from .tasks import scan_landscape

SCAN_COLUMNS = ["scenario", "scan", "x", "y", "value"]


def scenarios(grid: int) -> Dict[str, np.ndarray]:
    """固定點：三個角點與四個角點"""
    last = grid - 1
    three = [(0, 0), (last, 0), (0, last)]
    return {
        "three-corners": np.asarray(three, dtype=np.int64),
        "four-corners": np.asarray(three + [(last, last)], dtype=np.int64),
    }


def dopt_variants(tau: float = 1.0, coding: str = "coded") -> Dict[str, DoptConfig]:
    """
    一次基底的 D-optimality 變化

    - linear: 只有 [1, x1, x2]
    - cross: 附加 x1·x2
    - anisotropic: 只附加 x1²
    - isotropic: 每個座標各附加一個平方項
    """
    return {
        "DOPT-linear": DoptConfig(base_degree=1, bayes_terms=0, tau=tau, coding=coding),
        "DOPT-cross": DoptConfig(base_degree=1, tau=tau, coding=coding, extra_terms=((1, 1),)),
        "DOPT-anisotropic": DoptConfig(base_degree=1, tau=tau, coding=coding, extra_terms=((2, 0),)),
        "DOPT-isotropic": DoptConfig(base_degree=1, bayes_terms=1, tau=tau, coding=coding),
    }


class LandscapeStudy(BaseStudy):
    """Landscape study"""

    study_name = StudyName.LANDSCAPE

    def scans(self) -> List[Tuple[str, CriterionId, Optional[DoptConfig]]]:
        """(掃描名稱, 準則, D-optimality 配置)"""
        cfg = self.config
        items: List[Tuple[str, CriterionId, Optional[DoptConfig]]] = [
            (cid.value, cid, cfg.dopt_config if cid is CriterionId.DOPT else None)
            for cid in cfg.criterion_ids
        ]
        items.extend(
            (name, CriterionId.DOPT, dopt_cfg)
            for name, dopt_cfg in dopt_variants(cfg.tau, cfg.dopt_coding).items()
        )
        return items

    def execute(self) -> Dict[str, Any]:
        grid = self.config.grid
        domain = DomainSpec.square(grid, 2)
        fixed_points = scenarios(grid)

        tasks = [
            Task(
                task_id=(scenario, name),
                fn=scan_landscape,
                kwargs={
                    "cid": cid,
                    "fixed": fixed,
                    "domain": domain,
                    "dopt_cfg": dopt_cfg,
                    "scale": self.scale,
                },
            )
            for scenario, fixed in fixed_points.items()
            for name, cid, dopt_cfg in self.scans()
        ]
        results = self.run_tasks(tasks)

        rows: List[Dict[str, Any]] = []
        minima: List[Dict[str, Any]] = []
        for (scenario, name), scan in results:
            table = scan.as_table()
            for y in range(table.shape[0]):
                for x in range(table.shape[1]):
                    rows.append({"scenario": scenario, "scan": name, "x": x, "y": y, "value": float(table[y, x])})
            x_min, y_min = scan.argmin()
            minima.append({
                "scenario": scenario,
                "scan": name,
                "x": x_min,
                "y": y_min,
                "minimum": scan.minimum(),
                "occupied": bool(scan.occupied[x_min, y_min]),
            })
            svg = self.out_dir / f"{scenario}_{name}.svg"
            result = self.record(render_heatmap(
                table, svg, title=f"{name} ({scenario})", marks=fixed_points[scenario]
            ))
            if result.success:
                self.record(RenderResult(success=True, path=str(svg.with_suffix(".png"))))

        self.write_table("scans", rows, SCAN_COLUMNS)
        self.write_table("minima", minima)
        return {f"{row['scenario']}/{row['scan']}": (row["x"], row["y"]) for row in minima}
