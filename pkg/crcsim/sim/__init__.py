"""CRC rounds, centralized baselines and per-round metrics."""

from crcsim.sim.baseline import BaselineKind, BaselineResult, run_baseline
from crcsim.sim.crc import (
    CRCResult,
    CRCSettings,
    NodeState,
    aggregation_neighbors,
    crc_round,
    m0_heuristic,
    run_crc,
)
from crcsim.sim.metrics import (
    CONVERGENCE_GAP,
    METRIC_COLUMNS,
    RoundEvaluator,
    RoundMetrics,
    evaluate_round,
    metrics_frame,
    rounds_to_converge,
    write_metrics_csv,
)

__all__ = [
    "CONVERGENCE_GAP",
    "METRIC_COLUMNS",
    "BaselineKind",
    "BaselineResult",
    "CRCResult",
    "CRCSettings",
    "NodeState",
    "RoundEvaluator",
    "RoundMetrics",
    "aggregation_neighbors",
    "crc_round",
    "evaluate_round",
    "m0_heuristic",
    "metrics_frame",
    "rounds_to_converge",
    "run_baseline",
    "run_crc",
    "write_metrics_csv",
]
