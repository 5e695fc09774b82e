"""
crcsim - a simulator of collaborative risk-based calibration for decentralized naive Bayes learning.
"""

from crcsim.calibration import NAIVE_BAYES, lrc, project, rc, rc_update
from crcsim.experiment import ExperimentConfig, parse_config, run_experiment, sweep
from crcsim.network import Graph, RewireSchedule, TopologySpec
from crcsim.sim import CRCSettings, m0_heuristic, run_baseline, run_crc

__all__ = [
    "NAIVE_BAYES",
    "CRCSettings",
    "ExperimentConfig",
    "Graph",
    "RewireSchedule",
    "TopologySpec",
    "lrc",
    "m0_heuristic",
    "parse_config",
    "project",
    "rc",
    "rc_update",
    "run_baseline",
    "run_crc",
    "run_experiment",
    "sweep",
]
