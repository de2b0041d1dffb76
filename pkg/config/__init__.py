"""
Configuration module for doe-chan
"""
from .settings import Config, get_config, load_config
from .experiments import (
    ExperimentConfig, StudyName, STUDIES, ExperimentConfigManager,
    get_experiment_config, load_experiment_configs
)

__all__ = [
    # App config
    "Config", "get_config", "load_config",
    # Experiment config
    "ExperimentConfig", "StudyName", "STUDIES", "ExperimentConfigManager",
    "get_experiment_config", "load_experiment_configs"
]
