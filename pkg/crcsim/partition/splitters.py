"""Splitting a global training set into equally sized local datasets.

Every splitter first draws a uniformly random global sample of ``n · m_v`` positions and then
partitions exactly that sample, so the pooled local data stays an i.i.d. sample of the dataset
whatever the drift mode.
"""

from collections.abc import Callable

import numpy as np
import numpy.typing as npt

from crcsim.data.dataset import Dataset
from crcsim.exceptions import InsufficientDataError
from crcsim.partition.pca import project_onto_component
from crcsim.partition.plan import PartitionMode, PartitionPlan
from crcsim.utils.logging import get_logger

logger = get_logger(__name__)

Splitter = Callable[[Dataset, int, int, np.random.Generator], PartitionPlan]


def _draw_sample(dataset: Dataset, n: int, m_v: int, rng: np.random.Generator) -> npt.NDArray[np.int64]:
    if n < 1 or m_v < 1 or n * m_v > dataset.m:
        raise InsufficientDataError(n, m_v, dataset.m)
    return rng.choice(dataset.m, size=n * m_v, replace=False).astype(np.int64)


def _blocks(ordered: npt.NDArray[np.int64], n: int, m_v: int) -> list[list[int]]:
    return ordered.reshape(n, m_v).tolist()  # type: ignore[no-any-return]


def split_iid(dataset: Dataset, n: int, m_v: int, rng: np.random.Generator) -> PartitionPlan:
    sample = _draw_sample(dataset, n, m_v, rng)
    return PartitionPlan(mode=PartitionMode.IID, n=n, m_v=m_v, assignment=_blocks(sample, n, m_v))


def split_drift_x(dataset: Dataset, n: int, m_v: int, rng: np.random.Generator) -> PartitionPlan:
    """Contiguous blocks of the sample sorted along its first principal component."""
    sample = _draw_sample(dataset, n, m_v, rng)
    scores = project_onto_component(dataset.X[sample])
    ordered = sample[np.argsort(scores, kind="stable")]
    return PartitionPlan(mode=PartitionMode.DRIFT_X, n=n, m_v=m_v, assignment=_blocks(ordered, n, m_v))


def _fill_by_class(pools: list[list[int]], n: int, m_v: int) -> list[list[int]]:
    """Fill nodes one at a time, node ``v`` starting from class ``v mod r``.

    An exhausted pool hands over to the next class cyclically, also mid-node.
    """
    r = len(pools)
    cursors = [0] * r
    assignment = []
    for v in range(n):
        block: list[int] = []
        k = v % r
        while len(block) < m_v:
            available = len(pools[k]) - cursors[k]
            if available == 0:
                k = (k + 1) % r
                continue
            take = min(available, m_v - len(block))
            block.extend(pools[k][cursors[k] : cursors[k] + take])
            cursors[k] += take
        assignment.append(block)
    return assignment


def _class_pools(dataset: Dataset, sample: npt.NDArray[np.int64]) -> list[list[int]]:
    labels = dataset.y[sample]
    return [sample[labels == k].tolist() for k in range(1, dataset.schema.class_cardinality + 1)]


def _log_label_purity(plan: PartitionPlan, dataset: Dataset) -> None:
    single_class = sum(len(set(dataset.y[block].tolist())) == 1 for block in plan.assignment)
    logger.debug("label_drift_partition", mode=plan.mode.value, single_class_nodes=single_class, n=plan.n)


def split_drift_y(dataset: Dataset, n: int, m_v: int, rng: np.random.Generator) -> PartitionPlan:
    """Single-class nodes wherever class counts permit."""
    sample = _draw_sample(dataset, n, m_v, rng)
    assignment = _fill_by_class(_class_pools(dataset, sample), n, m_v)
    plan = PartitionPlan(mode=PartitionMode.DRIFT_Y, n=n, m_v=m_v, assignment=assignment)
    _log_label_purity(plan, dataset)
    return plan


def split_drift_xy(dataset: Dataset, n: int, m_v: int, rng: np.random.Generator) -> PartitionPlan:
    """Label drift with each class pool sorted along the sample's first principal component."""
    sample = _draw_sample(dataset, n, m_v, rng)
    ordered = sample[np.argsort(project_onto_component(dataset.X[sample]), kind="stable")]
    assignment = _fill_by_class(_class_pools(dataset, ordered), n, m_v)
    plan = PartitionPlan(mode=PartitionMode.DRIFT_XY, n=n, m_v=m_v, assignment=assignment)
    _log_label_purity(plan, dataset)
    return plan


SPLITTERS: dict[PartitionMode, Splitter] = {
    PartitionMode.IID: split_iid,
    PartitionMode.DRIFT_X: split_drift_x,
    PartitionMode.DRIFT_Y: split_drift_y,
    PartitionMode.DRIFT_XY: split_drift_xy,
}


def split(
    dataset: Dataset, mode: PartitionMode | str, n: int, m_v: int, rng: np.random.Generator
) -> PartitionPlan:
    """Dispatch to the splitter for ``mode``."""
    plan = SPLITTERS[PartitionMode(mode)](dataset, n, m_v, rng)
    logger.info("partition_created", mode=plan.mode.value, n=n, m_v=m_v)
    return plan
