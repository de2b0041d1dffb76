"""
Tournament - 每個準則最佳化的設計由所有準則交叉評估

輸出：
- cross_evaluation.csv: 每個 replicate × (optimizer, evaluator) 一列
- boxplots.csv: 每個 (domain, restriction, optimizer, evaluator) 的五數摘要
- boxplots_<domain>_<restriction>_by_evaluator.svg / _by_optimizer.svg
- worst_designs.csv / worst_designs_<domain>_<restriction>.svg:
  每格最近鄰距離總和最小的 replicate
- designs.json: 所有最佳化結果
- histories.csv: 每次最佳化每個溫度 stage 的最佳值
"""
from collections import defaultdict
from typing import Any, Dict, List, Tuple

import numpy as np

from config.experiments import StudyName
from models import CriterionId, DistanceScale, DomainSpec, OptResult
from doe.core import min_distance_sum, min_distances
from doe.criteria import safe_evaluate
from .base import BaseStudy
from .render import design_rows, render_boxplots, render_designs, write_document
from .stats import grouped_boxplots
from .tasks import optimization_tasks

CROSS_COLUMNS = ["domain", "restriction", "optimizer", "replicate", "evaluator", "value"]
HISTORY_COLUMNS = ["domain", "restriction", "criterion", "replicate", "stage", "best"]

Cell = Tuple[str, str, str]


def normalized(values: List[float], low: float, high: float) -> List[float]:
    """線性映射到 [0,1]；span 為 0 時全部為 0"""
    span = high - low
    return [0.0 if span == 0 else (v - low) / span for v in values]


def worst_replicate(
    results: List[Tuple[int, OptResult]],
    domain: DomainSpec,
    scale: DistanceScale = DistanceScale.INDEX
) -> Tuple[int, OptResult]:
    """最近鄰距離總和最小（填充最差）的 replicate；同值時取編號較小者"""
    return min(results, key=lambda item: (min_distance_sum(item[1].design, domain, scale), item[0]))


class TournamentStudy(BaseStudy):
    """Tournament study"""

    study_name = StudyName.TOURNAMENT

    def execute(self) -> Dict[str, Any]:
        cfg = self.config
        criteria = cfg.criterion_ids
        domains = {spec.label: spec for spec in cfg.domain_specs}
        dopt_cfg = cfg.dopt_config

        tasks = optimization_tasks(
            cfg.seed, list(domains.values()), cfg.restriction_ids, criteria,
            cfg.replicates, cfg.sa_config, dopt_cfg, self.scale,
        )
        results = self.run_tasks(tasks)

        cells: Dict[Cell, List[Tuple[int, OptResult]]] = defaultdict(list)
        cross_rows: List[Dict[str, Any]] = []
        for (label, restriction, optimizer, replicate), opt in results:
            cells[(label, restriction, optimizer)].append((replicate, opt))
            for evaluator in criteria:
                cross_rows.append({
                    "domain": label,
                    "restriction": restriction,
                    "optimizer": optimizer,
                    "replicate": replicate,
                    "evaluator": evaluator.value,
                    "value": safe_evaluate(evaluator, opt.design, domains[label], dopt_cfg, self.scale),
                })

        self.write_table("cross_evaluation", cross_rows, CROSS_COLUMNS)
        stats = grouped_boxplots(cross_rows, ["domain", "restriction", "optimizer", "evaluator"], "value")
        self.write_table("boxplots", stats)
        self._render_boxplots(cross_rows, criteria)
        self._write_worst(cells, domains)
        self.write_table("histories", [
            row
            for (label, restriction, optimizer, replicate), opt in results
            for row in opt.history_rows(
                domain=label, restriction=restriction, criterion=optimizer, replicate=replicate,
            )
        ], HISTORY_COLUMNS)
        self.record(write_document(self.out_dir / "designs.json", [
            {"domain": label, "restriction": restriction, "replicate": replicate, **opt.to_dict()}
            for (label, restriction, _, replicate), opt in results
        ]))

        return {
            "designs": len(results),
            "cells": len(criteria) ** 2,
            "rows": len(cross_rows),
        }

    # ==================== 圖表 ====================

    def _render_boxplots(self, rows: List[Dict[str, Any]], criteria: List[CriterionId]):
        """兩種排列：每個 evaluator 一個 panel，或每個 optimizer 一個 panel（值正規化）"""
        names = [c.value for c in criteria]
        grouped: Dict[Tuple[str, str], Dict[Tuple[str, str], List[float]]] = defaultdict(lambda: defaultdict(list))
        for row in rows:
            if np.isfinite(row["value"]):
                grouped[(row["domain"], row["restriction"])][(row["optimizer"], row["evaluator"])].append(row["value"])

        for (label, restriction), values in grouped.items():
            by_evaluator = [
                (f"evaluated by {evaluator}", names, [values[(optimizer, evaluator)] for optimizer in names])
                for evaluator in names
            ]
            self.record(render_boxplots(
                by_evaluator, self.out_dir / f"boxplots_{label}_{restriction}_by_evaluator.svg"
            ))

            bounds = {}
            for evaluator in names:
                pooled = [v for optimizer in names for v in values[(optimizer, evaluator)]]
                bounds[evaluator] = (min(pooled), max(pooled)) if pooled else (0.0, 0.0)
            by_optimizer = [
                (
                    f"optimized by {optimizer}",
                    names,
                    [normalized(values[(optimizer, evaluator)], *bounds[evaluator]) for evaluator in names],
                )
                for optimizer in names
            ]
            self.record(render_boxplots(
                by_optimizer, self.out_dir / f"boxplots_{label}_{restriction}_by_optimizer.svg"
            ))

    def _write_worst(self, cells: Dict[Cell, List[Tuple[int, OptResult]]], domains: Dict[str, DomainSpec]):
        rows: List[Dict[str, Any]] = []
        panels: Dict[Tuple[str, str], list] = defaultdict(list)
        for (label, restriction, optimizer), results in cells.items():
            domain = domains[label]
            replicate, opt = worst_replicate(results, domain, self.scale)
            distances = min_distances(opt.design, domain, self.scale)
            labels = {"domain": label, "restriction": restriction, "criterion": optimizer, "replicate": replicate}
            for row, distance in zip(design_rows(opt.design, labels), distances):
                rows.append({**row, "nn_distance": float(distance)})
            if domain.k == 2:
                panels[(label, restriction)].append((f"{optimizer} #{replicate}", opt.design, distances))

        self.write_table("worst_designs", rows)
        for (label, restriction), items in panels.items():
            self.record(render_designs(
                items, domains[label], self.out_dir / f"worst_designs_{label}_{restriction}.svg"
            ))
