"""Risk-based calibration (RC) and its local variant (LRC).

RC moves statistics toward lower empirical soft 0-1 loss by adding the labeled statistics of a
dataset and subtracting the statistics the current model expects for it::

    s ← project(s + lr · (s(X, Y) − s(X, θ(s))))

Both terms carry a total class mass of ``|X|``, so the equivalent sample size is preserved
whenever no projection floor triggers.
"""

import time
from dataclasses import dataclass, field
from pathlib import Path

import pandas as pd

from crcsim.calibration.family import NAIVE_BAYES, ClassifierFamily
from crcsim.data.dataset import Dataset
from crcsim.exceptions import CalibrationError, EmptyDatasetError
from crcsim.model.params import NBParams
from crcsim.model.stats import StatsVector
from crcsim.utils.logging import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True)
class RCRecord:
    t: int
    soft_err: float
    err01: float
    params: NBParams = field(repr=False)
    stats: StatsVector = field(repr=False)


@dataclass
class RCTrace:
    """Per-iteration records from initialization (``t = 0``) to ``t_max``."""

    records: list[RCRecord] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.records)

    @property
    def final(self) -> RCRecord:
        return self.records[-1]

    @property
    def best(self) -> RCRecord:
        """Record with the lowest soft training error; the earliest one on ties."""
        return min(self.records, key=lambda record: (record.soft_err, record.t))

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            {
                "t": [record.t for record in self.records],
                "soft_err": [record.soft_err for record in self.records],
                "err01": [record.err01 for record in self.records],
            }
        )

    def to_csv(self, path: str | Path) -> None:
        Path(path).parent.mkdir(parents=True, exist_ok=True)
        self.to_frame().to_csv(path, index=False)


def update_direction(
    dataset: Dataset,
    params: NBParams,
    *,
    family: ClassifierFamily = NAIVE_BAYES,
    data_stats: StatsVector | None = None,
) -> StatsVector:
    """Labeled minus expected statistics of ``dataset`` under ``params``."""
    if dataset.m == 0:
        raise EmptyDatasetError("calibration")
    labeled = data_stats if data_stats is not None else family.stat_map_dataset(dataset)
    return labeled - family.prob_stat_map(dataset.X, params)


def rc_update(
    stats: StatsVector,
    dataset: Dataset,
    lr: float,
    params: NBParams,
    *,
    family: ClassifierFamily = NAIVE_BAYES,
    data_stats: StatsVector | None = None,
) -> StatsVector:
    """One RC step.

    Args:
        stats: Current (projected) statistics
        dataset: Labeled data driving the step
        lr: Learning rate, ``lr >= 0``
        params: Classifier whose posterior defines the expected statistics, normally ``θ(stats)``
        family: Classifier family providing the mappings
        data_stats: Precomputed ``s(X, Y)`` of ``dataset``, reused across iterations
    """
    if lr < 0:
        raise CalibrationError(f"Learning rate must be non-negative, got {lr}")
    direction = update_direction(dataset, params, family=family, data_stats=data_stats)
    return family.project(stats + lr * direction)


def rc(
    dataset: Dataset,
    lr: float,
    t_max: int,
    init: StatsVector,
    *,
    family: ClassifierFamily = NAIVE_BAYES,
) -> RCTrace:
    """Run ``t_max`` RC iterations from ``init`` and record every iterate.

    The trace's ``final`` record is ``θ^{t_max}``; ``best`` marks the iterate with the lowest
    soft training error.
    """
    if t_max < 1:
        raise CalibrationError(f"t_max must be at least 1, got {t_max}")
    t_start = time.time()
    data_stats = family.stat_map_dataset(dataset)

    stats = family.project(init)
    params = family.param_map(stats)
    err01, soft_err = family.evaluate(params, dataset)
    trace = RCTrace([RCRecord(t=0, soft_err=soft_err, err01=err01, params=params, stats=stats)])

    for t in range(1, t_max + 1):
        stats = rc_update(stats, dataset, lr, params, family=family, data_stats=data_stats)
        params = family.param_map(stats)
        err01, soft_err = family.evaluate(params, dataset)
        trace.records.append(RCRecord(t=t, soft_err=soft_err, err01=err01, params=params, stats=stats))
        logger.debug("rc_iteration", t=t, soft_err=soft_err, err01=err01)

    logger.info(
        "rc_completed",
        m=dataset.m,
        lr=lr,
        t_max=t_max,
        final_err01=trace.final.err01,
        best_t=trace.best.t,
        seconds=round(time.time() - t_start, 3),
    )
    return trace


def lrc(
    agg_stats: StatsVector,
    local_dataset: Dataset,
    iterations: int,
    *,
    family: ClassifierFamily = NAIVE_BAYES,
) -> tuple[NBParams, StatsVector]:
    """Local RC: ``iterations`` unit-rate RC steps on a node's own data.

    No learning rate is applied; the equivalent sample size of ``agg_stats`` sets how far
    the local data can move the model.
    """
    if iterations < 1:
        raise CalibrationError(f"LRC needs at least one iteration, got {iterations}")
    if local_dataset.m == 0:
        raise EmptyDatasetError("lrc")
    data_stats = family.stat_map_dataset(local_dataset)
    stats = agg_stats
    for _ in range(iterations):
        params = family.param_map(stats)
        stats = rc_update(stats, local_dataset, 1.0, params, family=family, data_stats=data_stats)
    return family.param_map(stats), stats
