"""pytest 共用 fixtures"""
import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

import config.settings as settings_module
from config.experiments import ExperimentConfigManager
from models import Design, DomainSpec, SAConfig


@pytest.fixture(autouse=True)
def isolated_settings(tmp_path, monkeypatch):
    """每個測試使用獨立的輸出 / 日誌目錄與全新的配置單例"""
    monkeypatch.setenv("DOE_OUTPUTS_DIR", str(tmp_path / "outputs"))
    monkeypatch.setenv("DOE_LOGS_DIR", str(tmp_path / "logs"))
    for name in ("DOE_DISTANCE_SCALE", "DOE_MAX_GRID_CELLS"):
        monkeypatch.delenv(name, raising=False)
    monkeypatch.setenv("DOE_WORKERS", "1")
    settings_module._config = None
    ExperimentConfigManager.reset()
    yield
    settings_module._config = None
    ExperimentConfigManager.reset()


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def square2():
    """2×2 網格"""
    return DomainSpec.square(2, 2)


@pytest.fixture
def corners():
    """2×2 網格的四個角點"""
    return Design(points=[[0, 0], [0, 1], [1, 0], [1, 1]])


@pytest.fixture
def quick_sa():
    """測試用的小預算退火排程"""
    return SAConfig(t_max=1e-3, t_final=1e-6, n_reductions=10, n_max=500)
