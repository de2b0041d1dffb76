"""
Sequential study - 批次擴充設計的逐階段品質

每個 (domain, strategy, criterion, replicate) 先最佳化 n = m 的初始設計，
再擴充 iterations 次，每次 m 點。

輸出：
- stages.csv: 每個 replicate × stage 的整體設計準則值
- designs.csv: 附迭代 tag 的設計點
- stage_boxplots.csv
- designs_<domain>_<strategy>.svg: 每個準則最近鄰距離總和最小的設計
"""
from collections import defaultdict
from typing import Any, Dict, List, Tuple

from config.experiments import StudyName
from models import Design, DomainSpec, ExtensionStrategy, Restriction
from doe.core import min_distance_sum, min_distances
from doe.criteria import safe_evaluate
from doe.sequential import design_at_stage
from .base import BaseStudy
from .render import design_rows, render_designs
from .stats import grouped_boxplots
from .tasks import sequential_tasks

STAGE_COLUMNS = ["domain", "strategy", "criterion", "replicate", "stage", "n", "value"]

_STRATEGIES = {
    Restriction.FREE: ExtensionStrategy.FREE,
    Restriction.LH: ExtensionStrategy.LH_PRESERVING,
}


def extension_strategies(restrictions: List[Restriction]) -> List[ExtensionStrategy]:
    """free → 自由擴充，lh → 保持 LH 的擴充；mixed 沒有對應策略"""
    return [_STRATEGIES[r] for r in restrictions if r in _STRATEGIES]


def supported_cells(
    study: BaseStudy,
    domains: List[DomainSpec]
) -> List[Tuple[DomainSpec, ExtensionStrategy]]:
    """可執行的 (domain, strategy) 組合；不支援的組合記錄警告後略過"""
    restrictions = study.config.restriction_ids
    if Restriction.MIXED in restrictions:
        study.logger.warning(f"{study.display_name}: no sequential strategy for 'mixed', skipped")
    cells = []
    for domain in domains:
        for strategy in extension_strategies(restrictions):
            if strategy is ExtensionStrategy.LH_PRESERVING and not domain.is_square:
                study.logger.warning(
                    f"{study.display_name}: LH-preserving extension needs a square domain, skipped {domain.label}"
                )
                continue
            cells.append((domain, strategy))
    return cells


def run_sequential_tasks(study: BaseStudy, domains: List[DomainSpec]) -> List[Tuple[Tuple, Design]]:
    """依 supported_cells 建立並執行序列擴充任務"""
    cfg = study.config
    tasks = []
    for domain, strategy in supported_cells(study, domains):
        tasks.extend(sequential_tasks(
            cfg.seed, [domain], [strategy], cfg.criterion_ids, cfg.replicates,
            cfg.iterations, cfg.sa_config, cfg.dopt_config, study.scale,
        ))
    return study.run_tasks(tasks)


class SequentialStudy(BaseStudy):
    """Sequential extension study"""

    study_name = StudyName.SEQUENTIAL

    def execute(self) -> Dict[str, Any]:
        cfg = self.config
        domains = {spec.label: spec for spec in cfg.domain_specs}
        dopt_cfg = cfg.dopt_config
        results = run_sequential_tasks(self, list(domains.values()))

        stage_rows: List[Dict[str, Any]] = []
        point_rows: List[Dict[str, Any]] = []
        grouped: Dict[Tuple[str, str, str], List[Tuple[int, Design]]] = defaultdict(list)
        for (label, strategy, criterion, replicate), design in results:
            domain = domains[label]
            cid = next(c for c in cfg.criterion_ids if c.value == criterion)
            grouped[(label, strategy, criterion)].append((replicate, design))
            for stage in range(cfg.iterations + 1):
                partial = design_at_stage(design, stage)
                stage_rows.append({
                    "domain": label,
                    "strategy": strategy,
                    "criterion": criterion,
                    "replicate": replicate,
                    "stage": stage,
                    "n": partial.n,
                    "value": safe_evaluate(cid, partial, domain, dopt_cfg, self.scale),
                })
            point_rows.extend(design_rows(design, {
                "domain": label, "strategy": strategy, "criterion": criterion, "replicate": replicate,
            }))

        self.write_table("stages", stage_rows, STAGE_COLUMNS)
        self.write_table("designs", point_rows)
        self.write_table(
            "stage_boxplots",
            grouped_boxplots(stage_rows, ["domain", "strategy", "criterion", "stage"], "value"),
        )
        self._render_worst(grouped, domains)
        return {"designs": len(results), "stages": cfg.iterations + 1}

    def _render_worst(
        self,
        grouped: Dict[Tuple[str, str, str], List[Tuple[int, Design]]],
        domains: Dict[str, DomainSpec]
    ):
        panels: Dict[Tuple[str, str], list] = defaultdict(list)
        for (label, strategy, criterion), items in grouped.items():
            domain = domains[label]
            if domain.k != 2:
                continue
            replicate, design = min(
                items, key=lambda item: (min_distance_sum(item[1], domain, self.scale), item[0])
            )
            panels[(label, strategy)].append(
                (f"{criterion} #{replicate}", design, min_distances(design, domain, self.scale))
            )
        for (label, strategy), items in panels.items():
            self.record(render_designs(items, domains[label], self.out_dir / f"designs_{label}_{strategy}.svg"))
