"""Additive sufficient-statistics vectors."""

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

import numpy as np
import numpy.typing as npt

from crcsim.data.dataset import DiscreteFeature, FeatureSchema
from crcsim.exceptions import StatisticsError

# Floors on counts (and zeroth moments) and on implied variances
COUNT_FLOOR = 1e-9
VARIANCE_FLOOR = 1e-6

# Per-class continuous triple: zeroth, first and second moment
MOMENT_WIDTH = 3


class BlockKind(Enum):
    COUNTS = "counts"
    MOMENTS = "moments"


@dataclass(frozen=True)
class Block:
    kind: BlockKind
    offset: int
    width: int


@dataclass(frozen=True)
class StatsLayout:
    """Flat-vector layout: the class block followed by one ``r × width`` block per feature."""

    r: int
    blocks: tuple[Block, ...]
    size: int


@lru_cache(maxsize=64)
def layout_for(schema: FeatureSchema) -> StatsLayout:
    r = schema.class_cardinality
    offset = r
    blocks = []
    for feature in schema.features:
        if isinstance(feature, DiscreteFeature):
            block = Block(BlockKind.COUNTS, offset, feature.cardinality)
        else:
            block = Block(BlockKind.MOMENTS, offset, MOMENT_WIDTH)
        blocks.append(block)
        offset += r * block.width
    return StatsLayout(r=r, blocks=tuple(blocks), size=offset)


@dataclass(frozen=True, eq=False)
class StatsVector:
    """The statistics vector exchanged between nodes.

    Values live in one flat float64 array so that addition, scaling and averaging are single
    vectorized operations; blocks are reshaped views into it.
    """

    schema: FeatureSchema
    values: npt.NDArray[np.float64]

    def __post_init__(self) -> None:
        values = np.asarray(self.values, dtype=np.float64)
        expected = layout_for(self.schema).size
        if values.shape != (expected,):
            raise StatisticsError(f"Statistics vector has shape {values.shape}, schema needs ({expected},)")
        object.__setattr__(self, "values", values)

    @classmethod
    def zeros(cls, schema: FeatureSchema) -> "StatsVector":
        return cls(schema, np.zeros(layout_for(schema).size))

    @property
    def layout(self) -> StatsLayout:
        return layout_for(self.schema)

    @property
    def class_block(self) -> npt.NDArray[np.float64]:
        return self.values[: self.layout.r]

    def feature_block(self, i: int) -> npt.NDArray[np.float64]:
        """Block of feature ``i`` (0-based) as an ``r × width`` view."""
        layout = self.layout
        block = layout.blocks[i]
        return self.values[block.offset : block.offset + layout.r * block.width].reshape(layout.r, block.width)

    @property
    def ess(self) -> float:
        """Equivalent sample size: total class-count mass."""
        return float(self.class_block.sum())

    def copy(self) -> "StatsVector":
        return StatsVector(self.schema, self.values.copy())

    def _check_compatible(self, other: "StatsVector") -> None:
        if other.schema != self.schema:
            raise StatisticsError("Cannot combine statistics vectors of different schemas")

    def __add__(self, other: "StatsVector") -> "StatsVector":
        self._check_compatible(other)
        return StatsVector(self.schema, self.values + other.values)

    def __sub__(self, other: "StatsVector") -> "StatsVector":
        self._check_compatible(other)
        return StatsVector(self.schema, self.values - other.values)

    def __mul__(self, scalar: float) -> "StatsVector":
        return StatsVector(self.schema, self.values * float(scalar))

    __rmul__ = __mul__

    def __truediv__(self, scalar: float) -> "StatsVector":
        return StatsVector(self.schema, self.values / float(scalar))

    def allclose(self, other: "StatsVector", rtol: float = 1e-12, atol: float = 0.0) -> bool:
        return self.schema == other.schema and bool(np.allclose(self.values, other.values, rtol=rtol, atol=atol))


def average(vectors: list[StatsVector]) -> StatsVector:
    """Componentwise mean, summed in the given order."""
    if not vectors:
        raise StatisticsError("Cannot average an empty list of statistics vectors")
    total = vectors[0].values.copy()
    for vector in vectors[1:]:
        vectors[0]._check_compatible(vector)
        total += vector.values
    return StatsVector(vectors[0].schema, total / len(vectors))
