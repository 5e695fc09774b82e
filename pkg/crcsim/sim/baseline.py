"""Centralized baselines trained on the pooled global data."""

from dataclasses import dataclass
from enum import Enum

from crcsim.calibration.family import NAIVE_BAYES, ClassifierFamily
from crcsim.calibration.rc import RCRecord, RCTrace, rc
from crcsim.data.dataset import Dataset
from crcsim.exceptions import CalibrationError, EmptyDatasetError
from crcsim.model.params import NBParams
from crcsim.utils.logging import get_logger

logger = get_logger(__name__)


class BaselineKind(str, Enum):
    RC = "rc"
    ML = "ml"


@dataclass(frozen=True)
class BaselineResult:
    kind: BaselineKind
    params: NBParams
    trace: RCTrace

    @property
    def train_err(self) -> float:
        return self.trace.final.err01


def run_baseline(
    kind: BaselineKind | str,
    global_dataset: Dataset,
    *,
    lr: float = 0.05,
    t_max: int = 64,
    init_ess: float | None = None,
    smoothing: float = 1.0,
    family: ClassifierFamily = NAIVE_BAYES,
) -> BaselineResult:
    """Train the RC gold standard or the maximum-likelihood classifier on pooled data.

    Args:
        kind: ``rc`` or ``ml``
        global_dataset: Union of all local datasets
        lr: RC learning rate
        t_max: RC iterations
        init_ess: Equivalent sample size of the RC uniform initialization; defaults to ``m``
        smoothing: Equivalent sample size of the uniform prior added to the ML counts; ``0``
            gives plain maximum likelihood (projection floors still apply)
        family: Classifier family
    """
    kind = BaselineKind(kind)
    if global_dataset.m == 0:
        raise EmptyDatasetError(f"{kind.value} baseline")
    schema = global_dataset.schema

    if kind is BaselineKind.RC:
        ess = float(global_dataset.m) if init_ess is None else init_ess
        trace = rc(global_dataset, lr, t_max, family.uniform_init(schema, ess), family=family)
        result = BaselineResult(kind=kind, params=trace.final.params, trace=trace)
    else:
        if smoothing < 0:
            raise CalibrationError(f"ML smoothing must be non-negative, got {smoothing}")
        stats = family.stat_map_dataset(global_dataset)
        if smoothing > 0:
            stats = stats + family.uniform_init(schema, smoothing)
        stats = family.project(stats)
        params = family.param_map(stats)
        err01, soft_err = family.evaluate(params, global_dataset)
        trace = RCTrace([RCRecord(t=0, soft_err=soft_err, err01=err01, params=params, stats=stats)])
        result = BaselineResult(kind=kind, params=params, trace=trace)

    logger.info("baseline_trained", kind=kind.value, m=global_dataset.m, train_err=result.train_err)
    return result
