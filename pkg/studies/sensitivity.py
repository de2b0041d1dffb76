"""
Sensitivity studies - 最佳化設計用於 SRCC 敏感度分析時的誤差

- AnalyticalSensitivityStudy: 15 個分析函數，參考值為完整網格（fixture）
- TrussSensitivityStudy: 十桿與 25 桿桁架，參考值為 Monte Carlo 取樣

ε 為設計估計的 ρ̃ 與參考 ρ 的平均絕對差；表格以 100·mean 與 100·max 呈現。
"""
import json
from collections import defaultdict
from pathlib import Path
from typing import Any, Dict, List, Tuple

import numpy as np

from config.experiments import StudyName
from config.settings import get_config
from models import Design, Restriction
from benchmarks.analytical import analytical_suite, load_fixtures
from benchmarks.truss import TrussModel, resolve_truss
from doe.sensitivity import estimate_report, monte_carlo_reference
from doe.sequential import design_at_stage
from utils.file_utils import read_json, write_json
from .base import BaseStudy
from .render import RenderResult, render_boxplots
from .sequential import run_sequential_tasks
from .stats import grouped_boxplots, mean_max_table
from .pool import Task
from .tasks import optimization_tasks, optimize_design, task_seed

ERROR_COLUMNS = ["domain", "restriction", "criterion", "replicate", "stage", "n", "model", "epsilon"]

# 同一個 process 內共用的 Monte Carlo 參考值
_REFERENCE_CACHE: Dict[Tuple[str, str, int, int], np.ndarray] = {}


def _box_panels(
    rows: List[Dict[str, Any]],
    panel_keys: List[str],
    box_key: str,
    value: str = "epsilon"
) -> List[Tuple[str, List[str], List[List[float]]]]:
    """依 panel_keys 分 panel、box_key 分箱形的資料"""
    data: Dict[Tuple, Dict[str, List[float]]] = defaultdict(lambda: defaultdict(list))
    for row in rows:
        data[tuple(row[k] for k in panel_keys)][row[box_key]].append(row[value])
    return [
        (" ".join(str(part) for part in key), list(boxes), [boxes[label] for label in boxes])
        for key, boxes in data.items()
    ]


# ==================== 分析函數 ====================

class AnalyticalSensitivityStudy(BaseStudy):
    """
    分析函數的敏感度誤差

    方形網格以序列擴充設計計算每個階段（n = m, 2m, ...）的誤差，
    階段 0 即為 one-shot 設計；非方形網格只計算 one-shot 設計。
    """

    study_name = StudyName.SA_ANALYTICAL

    def execute(self) -> Dict[str, Any]:
        cfg = self.config
        domains = {spec.label: spec for spec in cfg.domain_specs}
        fixtures_dir = get_config().fixtures_dir

        square = [d for d in domains.values() if d.is_square]
        other = [d for d in domains.values() if not d.is_square]

        staged: List[Tuple[Tuple, Design]] = []
        if square:
            staged = run_sequential_tasks(self, square)
        one_shot = []
        if other:
            one_shot = [
                (task_id, opt.design)
                for task_id, opt in self.run_tasks(optimization_tasks(
                    cfg.seed, other, cfg.restriction_ids, cfg.criterion_ids,
                    cfg.replicates, cfg.sa_config, cfg.dopt_config, self.scale,
                ))
            ]

        rows: List[Dict[str, Any]] = []
        for label, domain in domains.items():
            references = load_fixtures(fixtures_dir, domain)
            models = analytical_suite(domain)
            stages = cfg.iterations + 1 if domain.is_square else 1
            for (d_label, restriction, criterion, replicate), design in staged + one_shot:
                if d_label != label:
                    continue
                for stage in range(stages):
                    partial = design_at_stage(design, stage) if design.tags is not None else design
                    for model in models:
                        report = estimate_report(
                            partial, domain, model, references[model.model_id],
                            design_id=f"{criterion}#{replicate}",
                        )
                        rows.append({
                            "domain": label,
                            "restriction": restriction,
                            "criterion": criterion,
                            "replicate": replicate,
                            "stage": stage,
                            "n": partial.n,
                            "model": model.model_id,
                            "epsilon": report.mean_error,
                        })

        self.write_table("errors", rows, ERROR_COLUMNS)
        one_shot_rows = [row for row in rows if row["stage"] == 0]
        table = mean_max_table(one_shot_rows, ["domain", "restriction", "criterion", "n"], "epsilon")
        self.write_table("one_shot_table", table)
        staged_rows = [row for row in rows if domains[row["domain"]].is_square]
        if staged_rows:
            self.write_table(
                "sequential_table",
                mean_max_table(staged_rows, ["domain", "restriction", "criterion", "n"], "epsilon"),
            )
        self.write_table(
            "model_boxplots",
            grouped_boxplots(rows, ["domain", "restriction", "criterion", "n", "model"], "epsilon"),
        )
        self._render(rows)

        return {
            f"{row['domain']}/{row['restriction']}/{row['criterion']}/n={row['n']}": row["mean"]
            for row in table
        }

    def _render(self, rows: List[Dict[str, Any]]):
        by_figure: Dict[Tuple[str, str, int], List[Dict[str, Any]]] = defaultdict(list)
        for row in rows:
            by_figure[(row["domain"], row["restriction"], row["n"])].append(row)
        for (label, restriction, n), items in by_figure.items():
            self.record(render_boxplots(
                _box_panels(items, ["model"], "criterion"),
                self.out_dir / f"errors_{label}_{restriction}_n{n}.svg",
            ))


# ==================== 桁架 ====================

class TrussSensitivityStudy(BaseStudy):
    """
    桁架的敏感度誤差

    設計大小為 level 數（十桿 42、25 桿 30）乘上 size_multipliers；
    每個回應（w, d, s）的 ε 與 Monte Carlo 參考值比較。
    """

    study_name = StudyName.SA_TRUSS

    def reference_path(self, model: TrussModel) -> Path:
        return self.out_dir / f"reference_{model.model_id}_{self.config.mc_samples}_{self.config.seed}.json"

    def reference(self, model: TrussModel) -> np.ndarray:
        """
        Monte Carlo 參考相關係數：先查記憶體快取，再查磁碟，最後重新計算

        Returns:
            np.ndarray: (回應數, 參數數)
        """
        cfg = self.config
        geometry = model.to_dict()
        key = (model.model_id, json.dumps(geometry, sort_keys=True), cfg.mc_samples, cfg.seed)
        if key in _REFERENCE_CACHE:
            return _REFERENCE_CACHE[key]

        path = self.reference_path(model)
        cached = read_json(path) if path.exists() else None
        # 同名但幾何不同的模型需重新計算
        if cached is not None and cached.get("model") == geometry:
            self.logger.info(f"{model.model_id}: loading cached reference {path.name}")
            reference = np.asarray(cached["reference"], dtype=float)
        else:
            self.logger.info(f"{model.model_id}: Monte Carlo reference with {cfg.mc_samples} samples")
            rng = task_seed(cfg.seed, "reference", model.model_id).generator()
            reference = monte_carlo_reference(model.domain, model, cfg.mc_samples, rng)
            write_json(path, {
                "model_id": model.model_id,
                "samples": cfg.mc_samples,
                "seed": cfg.seed,
                "response_names": list(model.response_names),
                "model": geometry,
                "reference": reference.tolist(),
            })
        self.record(RenderResult(success=True, path=str(path)))
        _REFERENCE_CACHE[key] = reference
        return reference

    def _tasks(self, models: List[TrussModel]) -> List[Task]:
        cfg = self.config
        tasks = []
        for model in models:
            domain = model.domain
            m = domain.levels[0]
            for multiplier in cfg.size_multipliers:
                n = m * multiplier
                for restriction in cfg.restriction_ids:
                    if restriction is Restriction.MIXED and multiplier > 1:
                        self.logger.warning(f"{self.display_name}: mixed designs have n = {m}, skipped n={n}")
                        continue
                    for cid in cfg.criterion_ids:
                        for replicate in range(cfg.replicates):
                            tasks.append(Task(
                                task_id=(model.model_id, n, restriction.value, cid.value, replicate),
                                fn=optimize_design,
                                kwargs={
                                    "cid": cid,
                                    "domain": domain,
                                    "restriction": restriction,
                                    "sa_cfg": cfg.sa_config,
                                    "dopt_cfg": cfg.dopt_config,
                                    "scale": self.scale,
                                    "seed": task_seed(
                                        cfg.seed, model.model_id, n, restriction.value, cid.value,
                                        replicate=replicate,
                                    ),
                                    "n": n,
                                },
                            ))
        return tasks

    def execute(self) -> Dict[str, Any]:
        models: Dict[str, TrussModel] = {}
        for ref in self.config.models:
            model = resolve_truss(ref)
            models[model.model_id] = model
            # 幾何檔可直接編輯後以路徑傳回 models
            geometry_path = model.save(self.out_dir / f"{model.model_id}.json")
            self.record(RenderResult(success=True, path=str(geometry_path)))
        references = {model_id: self.reference(model) for model_id, model in models.items()}
        results = self.run_tasks(self._tasks(list(models.values())))

        rows: List[Dict[str, Any]] = []
        for (model_id, n, restriction, criterion, replicate), opt in results:
            model = models[model_id]
            report = estimate_report(
                opt.design, model.domain, model, references[model_id],
                design_id=f"{criterion}#{replicate}",
            )
            rows.extend(report.to_rows(
                restriction=restriction,
                criterion=criterion,
                replicate=replicate,
                multiplier=n // model.domain.levels[0],
            ))

        self.write_table("errors", rows)
        table = mean_max_table(rows, ["model", "restriction", "criterion", "n"], "epsilon")
        self.write_table("error_table", table)
        self.write_table(
            "response_table",
            mean_max_table(rows, ["model", "restriction", "criterion", "n", "response"], "epsilon"),
        )
        self._render(rows)

        return {
            f"{row['model']}/{row['restriction']}/{row['criterion']}/n={row['n']}": row["mean"]
            for row in table
        }

    def _render(self, rows: List[Dict[str, Any]]):
        by_figure: Dict[Tuple[str, int], List[Dict[str, Any]]] = defaultdict(list)
        for row in rows:
            by_figure[(row["restriction"], row["multiplier"])].append(row)
        for (restriction, multiplier), items in by_figure.items():
            self.record(render_boxplots(
                _box_panels(items, ["criterion", "model"], "response"),
                self.out_dir / f"errors_{restriction}_x{multiplier}.svg",
            ))
