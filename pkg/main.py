"""
doe-chan - Optimal discrete design of experiments

Usage:
    python main.py tournament [--criteria AE,EMM,ML2] [--domains 7x10,10x10] [--replicates 20]
    python main.py projection | sequential | sa-analytical | sa-truss | landscape [options]
    python main.py fixtures [--domains 10x10]

每個 study 的流程：
- 讀取配置 (預設 → config/experiments.json 或 --config → 環境變數 → CLI)
- 以 seed 衍生每個 replicate 的亂數流，分派到 worker pool
- 輸出 CSV / SVG / manifest 到 <out>/<study>/

Exit codes: 0 成功，2 配置錯誤，3 執行錯誤
"""
import sys
import argparse
import traceback
from pathlib import Path
from datetime import datetime
from typing import Any, Dict, Optional

project_root = Path(__file__).parent
sys.path.insert(0, str(project_root))

from config import STUDIES, Config, load_config, load_experiment_configs
from errors import ConfigError
from models import DomainSpec
from benchmarks.analytical import write_fixtures
from studies import STUDY_CLASSES, StudyResult
from utils.logger import Operation, setup_logger, get_logger

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_RUNTIME = 3

# CLI 參數 → ExperimentConfig 欄位
OVERRIDE_FIELDS = {
    "seed": "seed",
    "replicates": "replicates",
    "out": "out_dir",
    "criteria": "criteria",
    "restriction": "restrictions",
    "domains": "domains",
    "n_max": "n_max",
    "workers": "workers",
    "iterations": "iterations",
    "models": "models",
    "mc_samples": "mc_samples",
    "grid": "grid",
}


def create_session_id() -> str:
    """建立 session ID (timestamp)"""
    return datetime.now().strftime("%Y%m%d_%H%M%S")


def collect_overrides(args: argparse.Namespace) -> Dict[str, Any]:
    """將 CLI 參數轉為配置覆蓋值（未指定的參數不覆蓋）"""
    overrides = {
        field: getattr(args, name)
        for name, field in OVERRIDE_FIELDS.items()
        if getattr(args, name, None) is not None
    }
    if args.full_scale:
        overrides["full_scale"] = True
    return overrides


# ============================================================
# Study Functions
# ============================================================

def run_study(study: str, args: argparse.Namespace) -> StudyResult:
    """
    執行單一 study

    Raises:
        ConfigError: 配置無效
        DoeError: 執行期間的設計 / 模型錯誤
    """
    logger = get_logger()
    manager = load_experiment_configs(Path(args.config) if args.config else None)
    cfg = manager.get(study, collect_overrides(args))
    logger.info(f"▶ {study}: {len(cfg.criteria)} criteria, domains={','.join(cfg.domains) or '-'}")

    result = STUDY_CLASSES[study](cfg).run()

    logger.info(f"{Operation.DONE.value} {study} → {result.out_dir}")
    for key, value in result.summary.items():
        logger.debug(f"  {key}: {value}")
    return result


def run_fixtures(settings: Config, domains: Optional[str]) -> int:
    """寫入分析函數的完整網格參考值"""
    logger = get_logger()
    specs = [DomainSpec.parse(d) for d in (domains or "10x10").split(",") if d.strip()]
    for spec in specs:
        path = write_fixtures(settings.fixtures_dir, spec)
        logger.info(f"{Operation.DONE.value} fixtures → {path}")
    return EXIT_OK


# ============================================================
# CLI
# ============================================================

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="Flat key-value config file (.json or KEY=VALUE) or a run manifest")
    common.add_argument("--seed", type=int, help="Unsigned 64-bit base seed")
    common.add_argument("--replicates", type=int, help="Replicates per cell")
    common.add_argument("--out", help="Output directory (default: DOE_OUTPUTS_DIR)")
    common.add_argument(
        "--paper-scale", "--full-scale", dest="full_scale", action="store_true",
        help="Full annealing / replicate / Monte Carlo budgets"
    )
    common.add_argument("--criteria", help="Comma-separated criteria, e.g. AE,EMM,ML2")
    common.add_argument("--restriction", help="free, lh or mixed (comma-separated for several)")
    common.add_argument("--domains", help="Comma-separated grids, e.g. 7x10,10x10")
    common.add_argument("--n-max", dest="n_max", type=int, help="Annealing evaluation budget")
    common.add_argument("--workers", type=int, help="Parallel worker processes")
    common.add_argument("--iterations", type=int, help="Sequential extension iterations")
    common.add_argument("--models", help="Truss models or geometry JSON paths, e.g. ten-bar,my-truss.json")
    common.add_argument("--mc-samples", dest="mc_samples", type=int, help="Monte Carlo reference samples")
    common.add_argument("--grid", type=int, help="Landscape grid size")
    common.add_argument("-q", "--quiet", action="store_true", help="Quiet mode")

    parser = argparse.ArgumentParser(
        description="doe-chan - Optimal discrete design of experiments"
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    for study in STUDIES:
        subparsers.add_parser(study, parents=[common], help=f"Run the {study} study")
    subparsers.add_parser("fixtures", parents=[common], help="Write analytical reference fixtures")
    return parser


def main(argv: Optional[list] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    try:
        settings = load_config()
    except ConfigError as e:
        print(f"Config error: {e}", file=sys.stderr)
        return EXIT_CONFIG

    session_id = create_session_id()
    logger = setup_logger(
        log_dir=settings.logs_dir,
        session_id=session_id,
        level="WARNING" if args.quiet else settings.log_level,
        show_progress=not args.quiet
    )

    try:
        if args.command == "fixtures":
            return run_fixtures(settings, args.domains)
        run_study(args.command, args)
        return EXIT_OK
    except ConfigError as e:
        logger.error(f"Config error: {e}")
        return EXIT_CONFIG
    except Exception as e:
        logger.error(f"{args.command} failed: {e}")
        logger.debug(f"{args.command} error traceback:\n{traceback.format_exc()}")
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
