"""Dueling-reward multi-armed bandit simulator."""

import json

from ._core import (
    ConfigError,
    Instance,
    IoError,
    Policy,
    bernoulli_kl,
    confidence_radius,
    policy_names,
    validate_instance,
)
from . import _core

REGRET_CSV_HEADER = "algorithm,rep,t,regret_total,regret_reward,regret_dueling"
SUMMARY_CSV_HEADER = (
    "algorithm,axis,axis_value,mean_final,std_final,"
    "mean_final_reward,std_final_reward,mean_final_dueling,std_final_dueling"
)


def _as_json(config):
    return config if isinstance(config, str) else json.dumps(config)


def run_experiment(config):
    """Run a config given as a dict or JSON string; nothing is written to disk."""
    return _core.run_experiment(_as_json(config))


def sweep(config):
    return _core.sweep(_as_json(config))


__all__ = [
    "ConfigError",
    "Instance",
    "IoError",
    "Policy",
    "REGRET_CSV_HEADER",
    "SUMMARY_CSV_HEADER",
    "bernoulli_kl",
    "confidence_radius",
    "policy_names",
    "run_experiment",
    "sweep",
    "validate_instance",
]
