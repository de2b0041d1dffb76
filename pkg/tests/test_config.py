"""配置載入的測試"""
import json
import os

import pytest

from config.experiments import (
    DEFAULT_EXPERIMENTS, ExperimentConfig, ExperimentConfigManager, StudyName,
    coerce_fields, load_experiment_configs
)
from config.settings import Config, get_config
from errors import ConfigError
from models import CriterionId, DistanceScale, Restriction
from studies.render import write_manifest


def test_workers_default_to_cpu_count(monkeypatch):
    monkeypatch.delenv("DOE_WORKERS")
    monkeypatch.setattr(os, "cpu_count", lambda: 6)
    assert Config.from_env().workers == 6
    monkeypatch.setattr(os, "cpu_count", lambda: None)
    assert Config.from_env().workers == 1


def test_settings_from_env(tmp_path, monkeypatch):
    monkeypatch.setenv("DOE_WORKERS", "3")
    monkeypatch.setenv("DOE_DISTANCE_SCALE", "UNIT")
    config = Config.from_env()
    assert config.workers == 3
    assert config.distance_scale is DistanceScale.UNIT
    assert config.outputs_dir == tmp_path / "outputs"


@pytest.mark.parametrize("name, value", [
    ("DOE_WORKERS", "0"),
    ("DOE_WORKERS", "many"),
    ("DOE_DISTANCE_SCALE", "meters"),
])
def test_settings_errors(monkeypatch, name, value):
    monkeypatch.setenv(name, value)
    with pytest.raises(ConfigError):
        get_config()


def test_defaults_for_every_study():
    manager = ExperimentConfigManager()
    for study in DEFAULT_EXPERIMENTS:
        cfg = manager.get(study)
        assert cfg.study == study
        assert cfg.replicates >= 1


def test_project_file_values():
    cfg = ExperimentConfigManager().get(StudyName.TOURNAMENT)
    assert cfg.criterion_ids == list(CriterionId)
    assert cfg.domains == ["7x10", "10x10", "13x10"]
    assert cfg.restriction_ids == [Restriction.FREE, Restriction.LH]


def test_override_order(monkeypatch):
    monkeypatch.setenv("DOE_TOURNAMENT_REPLICATES", "7")
    monkeypatch.setenv("DOE_TOURNAMENT_N_MAX", "5000")
    manager = ExperimentConfigManager()
    cfg = manager.get(StudyName.TOURNAMENT, {"replicates": 3})
    assert cfg.replicates == 3
    assert cfg.n_max == 5000


def test_flat_dotenv_file(tmp_path):
    path = tmp_path / "run.cfg"
    path.write_text("study=projection\nreplicates=4\ncriteria=AE,ml2\n")
    manager = load_experiment_configs(path)
    cfg = manager.get(StudyName.PROJECTION)
    assert cfg.replicates == 4
    assert cfg.criterion_ids == [CriterionId.AE, CriterionId.ML2]
    with pytest.raises(ConfigError):
        manager.get(StudyName.TOURNAMENT)


def test_manifest_round_trip(tmp_path):
    original = ExperimentConfigManager().get(StudyName.SEQUENTIAL, {"seed": 99, "iterations": 2})
    path = tmp_path / "manifest.json"
    write_manifest(path, config=original.to_dict(), seeds={"seed": 99})
    restored = load_experiment_configs(path).get(StudyName.SEQUENTIAL)
    assert restored.to_dict() == original.to_dict()


def test_json_file_must_be_object(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps([1, 2, 3]))
    with pytest.raises(ConfigError):
        ExperimentConfigManager(path)


def test_missing_config_file(tmp_path):
    with pytest.raises(ConfigError):
        ExperimentConfigManager(tmp_path / "missing.json")


def test_full_scale_keeps_explicit_fields():
    manager = ExperimentConfigManager()
    scaled = manager.get(StudyName.TOURNAMENT, {"full_scale": True, "replicates": 5})
    assert scaled.n_max == 10**6
    assert scaled.replicates == 5
    assert scaled.mc_samples == 2 * 10**7
    truss = manager.get(StudyName.SA_TRUSS, {"full_scale": True})
    assert truss.n_max == 10**7
    assert truss.replicates == 20


@pytest.mark.parametrize("study, overrides", [
    ("unknown", {}),
    (StudyName.TOURNAMENT, {"criteria": "AE"}),
    (StudyName.TOURNAMENT, {"criteria": "AE,XYZ"}),
    (StudyName.TOURNAMENT, {"domains": "7x"}),
    (StudyName.TOURNAMENT, {"restrictions": "diagonal"}),
    (StudyName.TOURNAMENT, {"seed": -1}),
    (StudyName.TOURNAMENT, {"t_max": 1e-7}),
    (StudyName.SA_TRUSS, {"models": "three-bar"}),
    (StudyName.SA_TRUSS, {"mc_samples": 10}),
    (StudyName.PROJECTION, {"projection_dim": 2}),
    (StudyName.LANDSCAPE, {"grid": 2}),
])
def test_invalid_configs(study, overrides):
    with pytest.raises(ConfigError):
        ExperimentConfigManager().get(study, overrides)


def test_unknown_field():
    with pytest.raises(ConfigError):
        coerce_fields({"temperature": 1})


def test_experiment_config_to_dict_round_trip():
    cfg = ExperimentConfig(study=StudyName.LANDSCAPE, grid=11)
    assert ExperimentConfig.from_dict(cfg.to_dict()) == cfg
