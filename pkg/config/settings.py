"""Configuration management for doe-chan"""
import os
from pathlib import Path
from typing import Optional
from dataclasses import dataclass
from dotenv import load_dotenv

from errors import ConfigError
from models import DistanceScale


@dataclass
class Config:
    """
    應用程式主配置

    包含：
    - 路徑配置（outputs, logs, fixtures）
    - workers: replicate 平行處理數（預設為 CPU 核心數）
    - distance_scale: 距離計算尺度（index / unit）
    - max_grid_cells: full design 列舉的網格上限
    - log_level: 控制台日誌等級

    各 study 的實驗配置請見 config/experiments.py
    """
    project_root: Path
    outputs_dir: Path
    logs_dir: Path
    fixtures_dir: Path
    workers: int = 1
    distance_scale: DistanceScale = DistanceScale.INDEX
    max_grid_cells: int = 1_000_000
    log_level: str = "INFO"

    @classmethod
    def from_env(cls, env_path: Optional[str] = None) -> "Config":
        """從環境變數（與 .env）載入配置"""
        project_root = Path(__file__).resolve().parent.parent

        # 尋找 .env 檔案
        if env_path is None:
            current = project_root
            while current != current.parent:
                env_file = current / ".env"
                if env_file.exists():
                    env_path = str(env_file)
                    break
                current = current.parent

        if env_path and Path(env_path).exists():
            load_dotenv(env_path)
        else:
            load_dotenv()

        try:
            workers = int(os.getenv("DOE_WORKERS") or os.cpu_count() or 1)
            max_grid_cells = int(os.getenv("DOE_MAX_GRID_CELLS", "1000000"))
        except ValueError as e:
            raise ConfigError(f"Invalid integer in environment: {e}") from e
        if workers < 1:
            raise ConfigError("DOE_WORKERS must be >= 1")

        try:
            distance_scale = DistanceScale(os.getenv("DOE_DISTANCE_SCALE", "index").lower())
        except ValueError:
            raise ConfigError(
                "DOE_DISTANCE_SCALE must be 'index' or 'unit'"
            ) from None

        return cls(
            project_root=project_root,
            outputs_dir=Path(os.getenv("DOE_OUTPUTS_DIR", project_root / "outputs")),
            logs_dir=Path(os.getenv("DOE_LOGS_DIR", project_root / "logs")),
            fixtures_dir=project_root / "benchmarks" / "fixtures",
            workers=workers,
            distance_scale=distance_scale,
            max_grid_cells=max_grid_cells,
            log_level=os.getenv("DOE_LOG_LEVEL", "INFO"),
        )

    def __repr__(self) -> str:
        return (
            f"Config(\n"
            f"  project_root={self.project_root}\n"
            f"  workers={self.workers}\n"
            f"  distance_scale={self.distance_scale.value}\n"
            f")"
        )


# 全域配置實例
_config: Optional[Config] = None


def get_config(env_path: Optional[str] = None) -> Config:
    """取得配置實例（單例模式）"""
    global _config
    if _config is None or env_path is not None:
        _config = Config.from_env(env_path)
    return _config


def load_config(env_path: Optional[str] = None) -> Config:
    """Alias for get_config"""
    return get_config(env_path)
