"""Experiment configuration, execution and sweeps."""

from crcsim.experiment.config import ExperimentConfig, parse_config, parse_config_text
from crcsim.experiment.runner import (
    OUTPUT_DIR_ENV,
    SWEEP_AXES,
    ExperimentResult,
    RepetitionResult,
    RepetitionStreams,
    aggregate_metrics,
    load_dataset,
    resolve_output_dir,
    run_baselines_only,
    run_experiment,
    run_repetition,
    sweep,
    sweep_config,
    train_size_sweep,
)

__all__ = [
    "OUTPUT_DIR_ENV",
    "SWEEP_AXES",
    "ExperimentConfig",
    "ExperimentResult",
    "RepetitionResult",
    "RepetitionStreams",
    "aggregate_metrics",
    "load_dataset",
    "parse_config",
    "parse_config_text",
    "resolve_output_dir",
    "run_baselines_only",
    "run_experiment",
    "run_repetition",
    "sweep",
    "sweep_config",
    "train_size_sweep",
]
