import numpy as np

from crcsim.model.stats import COUNT_FLOOR, VARIANCE_FLOOR, BlockKind, StatsVector
from crcsim.utils.logging import get_logger

logger = get_logger(__name__)


def project(stats: StatsVector) -> StatsVector:
    """Map statistics back onto the valid region.

    Counts and zeroth moments are floored at ``COUNT_FLOOR``; second moments are raised
    minimally so the implied variance is at least ``VARIANCE_FLOOR``. Idempotent, and the
    identity on statistics that are already valid.
    """
    projected = stats.copy()
    values = projected.values
    r = projected.layout.r

    floored = int(np.count_nonzero(values[:r] < COUNT_FLOOR))
    np.maximum(values[:r], COUNT_FLOOR, out=values[:r])

    for i, block in enumerate(projected.layout.blocks):
        view = projected.feature_block(i)
        if block.kind is BlockKind.COUNTS:
            floored += int(np.count_nonzero(view < COUNT_FLOOR))
            np.maximum(view, COUNT_FLOOR, out=view)
        else:
            floored += int(np.count_nonzero(view[:, 0] < COUNT_FLOOR))
            view[:, 0] = np.maximum(view[:, 0], COUNT_FLOOR)
            s1, s2 = view[:, 0], view[:, 1]
            minimum_s3 = s2 * s2 / s1 + VARIANCE_FLOOR * s1
            floored += int(np.count_nonzero(view[:, 2] < minimum_s3))
            view[:, 2] = np.maximum(view[:, 2], minimum_s3)

    if floored:
        logger.debug("projection_floors_applied", components=floored)
    return projected
