"""Per-round evaluation of the node classifiers against the gold standard."""

from dataclasses import dataclass
from pathlib import Path
from typing import TYPE_CHECKING

import numpy as np
import pandas as pd
from pydantic import BaseModel, Field

from crcsim.calibration.family import NAIVE_BAYES, ClassifierFamily
from crcsim.data.dataset import Dataset
from crcsim.exceptions import EmptyDatasetError

if TYPE_CHECKING:
    from crcsim.sim.crc import NodeState

METRIC_COLUMNS = [
    "t",
    "train_err_mean",
    "train_err_std",
    "test_err_mean",
    "test_err_std",
    "soft_train_mean",
    "rc_train_err",
    "rc_test_err",
    "train_gap",
    "test_gap",
]

# Gap below which CRC counts as converged to the gold standard
CONVERGENCE_GAP = 0.01


class RoundMetrics(BaseModel):
    """Errors of all node classifiers after one round.

    Node errors are measured on the pooled global train and test sets. Spreads are population
    standard deviations over the ``n`` nodes; gaps are the node mean minus the gold standard.
    """

    t: int
    train_err_mean: float
    train_err_std: float
    test_err_mean: float
    test_err_std: float
    soft_train_mean: float
    rc_train_err: float
    rc_test_err: float
    train_gap: float
    test_gap: float
    node_train_err: list[float] = Field(default_factory=list, repr=False)
    node_test_err: list[float] = Field(default_factory=list, repr=False)

    def row(self) -> dict[str, float]:
        return {column: getattr(self, column) for column in METRIC_COLUMNS}


@dataclass(frozen=True)
class RoundEvaluator:
    """Global data and gold-standard errors every round is compared against."""

    global_train: Dataset
    global_test: Dataset
    rc_train_err: float
    rc_test_err: float
    family: ClassifierFamily = NAIVE_BAYES

    def __post_init__(self) -> None:
        if self.global_train.m == 0 or self.global_test.m == 0:
            raise EmptyDatasetError("round evaluation")

    def __call__(self, t: int, states: "list[NodeState]") -> RoundMetrics:
        return evaluate_round(
            t, states, self.global_train, self.global_test, (self.rc_train_err, self.rc_test_err), family=self.family
        )


def evaluate_round(
    t: int,
    states: "list[NodeState]",
    global_train: Dataset,
    global_test: Dataset,
    baseline: tuple[float, float],
    *,
    family: ClassifierFamily = NAIVE_BAYES,
) -> RoundMetrics:
    """Evaluate every node's classifier on the global sets and aggregate across nodes.

    Args:
        t: Round index
        states: Node states after round ``t``
        global_train: Pooled local training data
        global_test: Held-out test data
        baseline: Gold-standard ``(train 0-1 error, test 0-1 error)`` on the same sets
        family: Classifier family used to evaluate the node parameters
    """
    train = np.array([family.evaluate(state.params, global_train) for state in states])
    test = np.array([family.evaluate(state.params, global_test)[0] for state in states])
    rc_train_err, rc_test_err = baseline

    train_err_mean = float(train[:, 0].mean())
    test_err_mean = float(test.mean())
    return RoundMetrics(
        t=t,
        train_err_mean=train_err_mean,
        train_err_std=float(train[:, 0].std()),
        test_err_mean=test_err_mean,
        test_err_std=float(test.std()),
        soft_train_mean=float(train[:, 1].mean()),
        rc_train_err=rc_train_err,
        rc_test_err=rc_test_err,
        train_gap=train_err_mean - rc_train_err,
        test_gap=test_err_mean - rc_test_err,
        node_train_err=train[:, 0].tolist(),
        node_test_err=test.tolist(),
    )


def metrics_frame(metrics: list[RoundMetrics]) -> pd.DataFrame:
    return pd.DataFrame([m.row() for m in metrics], columns=METRIC_COLUMNS)


def write_metrics_csv(metrics: list[RoundMetrics], path: str | Path) -> None:
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    metrics_frame(metrics).to_csv(path, index=False)


def rounds_to_converge(frame: pd.DataFrame, column: str = "test_gap", threshold: float = CONVERGENCE_GAP) -> int | None:
    """First round whose ``column`` is below ``threshold``, or ``None`` if no round gets there."""
    below = frame.loc[frame[column] < threshold, "t"]
    return None if below.empty else int(below.min())
