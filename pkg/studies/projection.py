"""
Projection - 最佳化設計投影到單一維度後的重複點數

以與 tournament 相同的 seed 標籤重建設計，投影到每個維度並計算 redundant_count。

輸出：
- redundant.csv: 每個 replicate × 維度一列
- histograms.csv: projection_dim 上重複點數的分佈
- means.csv: 每個 (domain, restriction, criterion) 的平均重複點數
- histograms_<domain>_<restriction>.svg
"""
from collections import Counter, defaultdict
from typing import Any, Dict, List, Tuple

from config.experiments import StudyName
from doe.core import project, redundant_count
from .base import BaseStudy
from .render import render_histograms
from .tasks import optimization_tasks

REDUNDANT_COLUMNS = ["domain", "restriction", "criterion", "replicate", "n", "dim", "levels", "redundant"]


class ProjectionStudy(BaseStudy):
    """Projection study"""

    study_name = StudyName.PROJECTION

    def execute(self) -> Dict[str, Any]:
        cfg = self.config
        criteria = cfg.criterion_ids
        domains = {spec.label: spec for spec in cfg.domain_specs}

        self.logger.info(f"{self.display_name}: regenerating tournament designs")
        tasks = optimization_tasks(
            cfg.seed, list(domains.values()), cfg.restriction_ids, criteria,
            cfg.replicates, cfg.sa_config, cfg.dopt_config, self.scale,
        )
        results = self.run_tasks(tasks)

        rows: List[Dict[str, Any]] = []
        counts: Dict[Tuple[str, str, str], Counter] = defaultdict(Counter)
        for (label, restriction, criterion, replicate), opt in results:
            domain = domains[label]
            target = cfg.projection_dim % domain.k
            for dim in range(domain.k):
                redundant = redundant_count(project(opt.design, [dim]))
                rows.append({
                    "domain": label,
                    "restriction": restriction,
                    "criterion": criterion,
                    "replicate": replicate,
                    "n": opt.design.n,
                    "dim": dim,
                    "levels": domain.levels[dim],
                    "redundant": redundant,
                })
                if dim == target:
                    counts[(label, restriction, criterion)][redundant] += 1

        self.write_table("redundant", rows, REDUNDANT_COLUMNS)
        self.write_table("histograms", [
            {"domain": label, "restriction": restriction, "criterion": criterion,
             "redundant": redundant, "count": count}
            for (label, restriction, criterion), histogram in counts.items()
            for redundant, count in sorted(histogram.items())
        ])
        means = [
            {
                "domain": label,
                "restriction": restriction,
                "criterion": criterion,
                "dim": cfg.projection_dim % domains[label].k,
                "mean": histogram_mean(histogram),
            }
            for (label, restriction, criterion), histogram in counts.items()
        ]
        self.write_table("means", means)

        panels: Dict[Tuple[str, str], list] = defaultdict(list)
        for (label, restriction, criterion), histogram in counts.items():
            panels[(label, restriction)].append((criterion, dict(histogram)))
        for (label, restriction), items in panels.items():
            self.record(render_histograms(items, self.out_dir / f"histograms_{label}_{restriction}.svg"))

        return {
            f"{row['domain']}/{row['restriction']}/{row['criterion']}": row["mean"] for row in means
        }


def histogram_mean(histogram: Dict[int, int]) -> float:
    """直方圖加權平均"""
    total = sum(histogram.values())
    return sum(value * count for value, count in histogram.items()) / total if total else 0.0
