"""
Experiment Configuration - 每個 study 獨立配置

每個 study 可配置：
- criteria / domains / restrictions: 實驗矩陣
- replicates / seed: 重複次數與亂數種子
- t_max / t_final / n_reductions / n_max: 退火排程
- iterations / models / mc_samples / size_multipliers / grid / projection_dim: study 專屬欄位
- bayes_terms / tau / base_degree / dopt_coding: D-optimality 配置

配置檔為扁平 key-value 文件（JSON 物件或 KEY=VALUE 的 dotenv 檔），
欄位名稱與 ExperimentConfig 相同。
"""
import json
import os
from dataclasses import dataclass, field, fields, replace
from pathlib import Path
from typing import Any, Dict, List, Optional

from dotenv import dotenv_values

from errors import ConfigError, DoeError
from models import CriterionId, DistanceScale, DomainSpec, DoptConfig, Restriction, SAConfig


# Study 名稱常數
class StudyName:
    """Study 名稱定義"""
    TOURNAMENT = "tournament"
    PROJECTION = "projection"
    SEQUENTIAL = "sequential"
    SA_ANALYTICAL = "sa-analytical"
    SA_TRUSS = "sa-truss"
    LANDSCAPE = "landscape"


STUDIES = (
    StudyName.TOURNAMENT,
    StudyName.PROJECTION,
    StudyName.SEQUENTIAL,
    StudyName.SA_ANALYTICAL,
    StudyName.SA_TRUSS,
    StudyName.LANDSCAPE,
)

ALL_CRITERIA = [c.value for c in CriterionId]
TRUTHY = ("true", "1", "yes")


# ==================== 型別轉換 ====================

def _as_list(value: Any) -> List[str]:
    if isinstance(value, str):
        return [part.strip() for part in value.split(",") if part.strip()]
    return [str(v).strip() for v in value]


def _as_optional_int(value: Any) -> Optional[int]:
    if value is None or (isinstance(value, str) and value.strip().lower() in ("", "none", "null")):
        return None
    return int(float(value))


def _as_int(value: Any) -> int:
    return int(float(value))


def _as_bool(value: Any) -> bool:
    if isinstance(value, bool):
        return value
    return str(value).strip().lower() in TRUTHY


def _as_optional_str(value: Any) -> Optional[str]:
    if value is None or str(value).strip().lower() in ("", "none", "null"):
        return None
    return str(value)


_COERCE = {
    "study": str,
    "criteria": _as_list,
    "domains": _as_list,
    "restrictions": _as_list,
    "replicates": _as_int,
    "seed": _as_int,
    "t_max": float,
    "t_final": float,
    "n_reductions": _as_int,
    "n_max": _as_int,
    "accepted_quota": _as_optional_int,
    "stage_length": _as_optional_int,
    "workers": _as_optional_int,
    "out_dir": _as_optional_str,
    "iterations": _as_int,
    "models": _as_list,
    "mc_samples": _as_int,
    "size_multipliers": lambda v: [_as_int(x) for x in _as_list(v)],
    "grid": _as_int,
    "projection_dim": _as_int,
    "bayes_terms": _as_int,
    "tau": float,
    "base_degree": _as_optional_int,
    "dopt_coding": str,
    "distance_scale": _as_optional_str,
    "full_scale": _as_bool,
}


@dataclass
class ExperimentConfig:
    """單一 study 的實驗配置（扁平欄位）"""
    study: str
    criteria: List[str] = field(default_factory=lambda: list(ALL_CRITERIA))
    domains: List[str] = field(default_factory=lambda: ["10x10"])
    restrictions: List[str] = field(default_factory=lambda: ["free", "lh"])
    replicates: int = 20
    seed: int = 1
    t_max: float = 1e-3
    t_final: float = 1e-6
    n_reductions: int = 100
    n_max: int = 100_000
    accepted_quota: Optional[int] = None
    stage_length: Optional[int] = None
    workers: Optional[int] = None
    out_dir: Optional[str] = None
    iterations: int = 3
    models: List[str] = field(default_factory=lambda: ["ten-bar", "twenty-five-bar"])
    mc_samples: int = 1_000_000
    size_multipliers: List[int] = field(default_factory=lambda: [1, 2])
    grid: int = 21
    projection_dim: int = -1
    bayes_terms: int = 1
    tau: float = 1.0
    base_degree: Optional[int] = None
    dopt_coding: str = "coded"
    distance_scale: Optional[str] = None
    full_scale: bool = False

    # ==================== 衍生物件 ====================

    @property
    def criterion_ids(self) -> List[CriterionId]:
        return [CriterionId.parse(c) for c in self.criteria]

    @property
    def domain_specs(self) -> List[DomainSpec]:
        return [DomainSpec.parse(d) for d in self.domains]

    @property
    def restriction_ids(self) -> List[Restriction]:
        return [Restriction(r.lower()) for r in self.restrictions]

    @property
    def sa_config(self) -> SAConfig:
        return SAConfig(
            t_max=self.t_max,
            t_final=self.t_final,
            n_reductions=self.n_reductions,
            n_max=self.n_max,
            accepted_quota=self.accepted_quota,
            stage_length=self.stage_length,
        )

    @property
    def dopt_config(self) -> DoptConfig:
        return DoptConfig(
            base_degree=self.base_degree,
            bayes_terms=self.bayes_terms,
            tau=self.tau,
            coding=self.dopt_coding,
        )

    @property
    def scale(self) -> Optional[DistanceScale]:
        return DistanceScale(self.distance_scale) if self.distance_scale else None

    def validate(self) -> "ExperimentConfig":
        """
        驗證所有欄位

        Raises:
            ConfigError: 任一欄位無效
        """
        if self.study not in STUDIES:
            raise ConfigError(f"Unknown study: {self.study!r} (expected one of {', '.join(STUDIES)})")
        if self.replicates < 1:
            raise ConfigError("replicates must be >= 1")
        if not 0 <= self.seed < 2**64:
            raise ConfigError("seed must be an unsigned 64-bit integer")
        if self.workers is not None and self.workers < 1:
            raise ConfigError("workers must be >= 1")
        try:
            criteria = self.criterion_ids
            self.domain_specs
            self.restriction_ids
            self.sa_config
            self.dopt_config
            self.scale
        except (DoeError, ValueError) as e:
            raise ConfigError(str(e)) from e

        if not criteria:
            raise ConfigError("At least one criterion is required")
        if self.study == StudyName.TOURNAMENT and len(criteria) < 2:
            raise ConfigError("The tournament needs at least two criteria")
        if self.study in (StudyName.SEQUENTIAL, StudyName.SA_ANALYTICAL) and self.iterations < 0:
            raise ConfigError("iterations must be >= 0")
        if self.study == StudyName.SA_TRUSS:
            from benchmarks.truss import resolve_truss
            for ref in self.models:
                try:
                    resolve_truss(ref)
                except (KeyError, DoeError) as e:
                    raise ConfigError(f"Invalid truss model {ref!r}: {e}") from e
            if self.mc_samples < 1000:
                raise ConfigError("mc_samples must be >= 1000")
            if not self.size_multipliers or min(self.size_multipliers) < 1:
                raise ConfigError("size_multipliers must be positive integers")
        if self.study == StudyName.PROJECTION:
            for spec in self.domain_specs:
                if not -spec.k <= self.projection_dim < spec.k:
                    raise ConfigError(f"projection_dim {self.projection_dim} out of range for {spec.label}")
        if self.study == StudyName.LANDSCAPE and self.grid < 3:
            raise ConfigError("grid must be >= 3")
        return self

    def full_scaled(self) -> "ExperimentConfig":
        """回復完整預算：n_max 1e6（桁架 1e7）、replicates 100（桁架 20）、Monte Carlo 2e7"""
        truss = self.study == StudyName.SA_TRUSS
        return replace(
            self,
            n_max=10**7 if truss else 10**6,
            replicates=20 if truss else 100,
            mc_samples=2 * 10**7,
            full_scale=True,
        )

    # ==================== 序列化 ====================

    def to_dict(self) -> Dict[str, Any]:
        return {f.name: getattr(self, f.name) for f in fields(self)}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "ExperimentConfig":
        """
        由扁平 dict 建立（值可為字串）

        Raises:
            ConfigError: 未知欄位或型別錯誤
        """
        kwargs = coerce_fields(data)
        if "study" not in kwargs:
            raise ConfigError("Experiment config needs a 'study' field")
        return cls(**kwargs)


def coerce_fields(data: Dict[str, Any]) -> Dict[str, Any]:
    """將扁平 key-value 轉為正確型別；key 不分大小寫"""
    out: Dict[str, Any] = {}
    for key, value in data.items():
        name = key.strip().lower()
        if name not in _COERCE:
            raise ConfigError(f"Unknown config field: {key!r}")
        try:
            out[name] = _COERCE[name](value)
        except (TypeError, ValueError) as e:
            raise ConfigError(f"Invalid value for {name}: {value!r} ({e})") from e
    return out


# 預設配置
DEFAULT_EXPERIMENTS: Dict[str, ExperimentConfig] = {
    StudyName.TOURNAMENT: ExperimentConfig(
        study=StudyName.TOURNAMENT,
        domains=["7x10", "10x10", "13x10"],
    ),
    StudyName.PROJECTION: ExperimentConfig(
        study=StudyName.PROJECTION,
        domains=["7x10", "10x10", "13x10"],
    ),
    StudyName.SEQUENTIAL: ExperimentConfig(
        study=StudyName.SEQUENTIAL,
        iterations=3,
    ),
    StudyName.SA_ANALYTICAL: ExperimentConfig(
        study=StudyName.SA_ANALYTICAL,
        iterations=3,
    ),
    StudyName.SA_TRUSS: ExperimentConfig(
        study=StudyName.SA_TRUSS,
        restrictions=["lh"],
        domains=[],
    ),
    StudyName.LANDSCAPE: ExperimentConfig(
        study=StudyName.LANDSCAPE,
        restrictions=[],
        grid=21,
    ),
}


class ExperimentConfigManager:
    """
    實驗配置管理器

    讀取順序（後者覆蓋前者）:
    1. DEFAULT_EXPERIMENTS (程式碼預設)
    2. config/experiments.json (以 study 為 key) 或使用者指定的扁平配置檔
    3. 環境變數 DOE_{STUDY}_{FIELD}，例如 DOE_TOURNAMENT_REPLICATES
    4. get() 的 overrides（CLI 參數）
    """

    _instance: Optional["ExperimentConfigManager"] = None

    def __init__(self, config_file: Optional[Path] = None):
        self._config_file = Path(config_file) if config_file else None
        self._file_values: Dict[str, Any] = {}
        self._study_values: Dict[str, Dict[str, Any]] = {}
        self._load_configs()

    def _load_configs(self):
        """載入專案配置檔與使用者配置檔"""
        project_file = Path(__file__).parent / "experiments.json"
        if project_file.exists():
            self._load_project_file(project_file)
        if self._config_file is not None:
            if not self._config_file.exists():
                raise ConfigError(f"Config file not found: {self._config_file}")
            self._file_values = self._read_flat_file(self._config_file)

    def _load_project_file(self, path: Path):
        """從 JSON 檔載入各 study 的配置"""
        try:
            with open(path, "r", encoding="utf-8") as f:
                data = json.load(f)
        except (OSError, json.JSONDecodeError) as e:
            raise ConfigError(f"Failed to load experiment config from {path}: {e}") from e
        for study, values in data.items():
            if study not in STUDIES:
                raise ConfigError(f"{path}: unknown study {study!r}")
            self._study_values[study] = coerce_fields(values)

    @staticmethod
    def _read_flat_file(path: Path) -> Dict[str, Any]:
        """讀取扁平配置：.json 物件（或 run manifest 的 "config"）或 dotenv 檔"""
        if path.suffix.lower() == ".json":
            try:
                with open(path, "r", encoding="utf-8") as f:
                    data = json.load(f)
            except (OSError, json.JSONDecodeError) as e:
                raise ConfigError(f"Failed to read {path}: {e}") from e
            if isinstance(data, dict) and isinstance(data.get("config"), dict):
                data = data["config"]
            if not isinstance(data, dict):
                raise ConfigError(f"{path}: expected a flat JSON object")
        else:
            data = {k: v for k, v in dotenv_values(path).items() if v is not None}
        return coerce_fields(data)

    def _load_from_env(self, study: str) -> Dict[str, Any]:
        """從環境變數載入配置"""
        prefix = f"DOE_{study.upper().replace('-', '_')}_"
        values = {
            name: os.environ[prefix + name.upper()]
            for name in _COERCE
            if name != "study" and prefix + name.upper() in os.environ
        }
        return coerce_fields(values)

    def get(self, study: str, overrides: Optional[Dict[str, Any]] = None) -> ExperimentConfig:
        """
        取得 study 配置

        Raises:
            ConfigError: study 不存在、配置檔與 study 不符或欄位無效
        """
        if study not in DEFAULT_EXPERIMENTS:
            raise ConfigError(f"Unknown study: {study!r}")
        file_study = self._file_values.get("study")
        if file_study is not None and file_study != study:
            raise ConfigError(f"Config file is for study {file_study!r}, not {study!r}")

        env_values = self._load_from_env(study)
        cli_values = coerce_fields({k: v for k, v in (overrides or {}).items() if v is not None})

        merged = DEFAULT_EXPERIMENTS[study].to_dict()
        merged.update(self._study_values.get(study, {}))
        merged.update(self._file_values)
        merged.update(env_values)
        merged.update(cli_values)
        merged["study"] = study

        cfg = ExperimentConfig(**merged)
        if cfg.full_scale:
            # 明確指定的預算欄位不被 full scale 覆蓋
            explicit = (set(self._file_values) | set(env_values) | set(cli_values)) & {
                "n_max", "replicates", "mc_samples"
            }
            cfg = replace(cfg.full_scaled(), **{k: getattr(cfg, k) for k in explicit})
        return cfg.validate()

    @classmethod
    def get_instance(cls, config_file: Optional[Path] = None) -> "ExperimentConfigManager":
        """取得單例實例"""
        if cls._instance is None:
            cls._instance = cls(config_file)
        return cls._instance

    @classmethod
    def reset(cls):
        """重置實例"""
        cls._instance = None


# 便利函數
def get_experiment_config(study: str, overrides: Optional[Dict[str, Any]] = None) -> ExperimentConfig:
    """取得 study 配置的便利函數"""
    return ExperimentConfigManager.get_instance().get(study, overrides)


def load_experiment_configs(config_file: Optional[Path] = None) -> ExperimentConfigManager:
    """載入實驗配置（可指定使用者配置檔）"""
    ExperimentConfigManager.reset()
    return ExperimentConfigManager.get_instance(config_file)
