"""Naive Bayes parameters."""

from dataclasses import dataclass

import numpy as np
import numpy.typing as npt

from crcsim.data.dataset import DiscreteFeature, FeatureSchema
from crcsim.exceptions import StatisticsError
from crcsim.model.stats import VARIANCE_FLOOR

# Probability vectors are checked against this tolerance on construction
NORMALIZATION_TOLERANCE = 1e-10


@dataclass(frozen=True, eq=False)
class NBParams:
    """Class prior plus one conditional per feature.

    Attributes:
        schema: Schema the parameters were mapped from
        class_probs: ``p(y)`` for ``y = 1..r``, shape ``(r,)``
        conditionals: Per feature, in schema order: an ``(r, r_i)`` table of ``p(x_i | y)`` for a
            discrete feature, or an ``(r, 2)`` array of ``(mean, variance)`` rows for a continuous one
    """

    schema: FeatureSchema
    class_probs: npt.NDArray[np.float64]
    conditionals: tuple[npt.NDArray[np.float64], ...]

    def __post_init__(self) -> None:
        r = self.schema.class_cardinality
        class_probs = np.asarray(self.class_probs, dtype=np.float64)
        if class_probs.shape != (r,):
            raise StatisticsError(f"class_probs has shape {class_probs.shape}, expected ({r},)")
        if len(self.conditionals) != self.schema.d:
            raise StatisticsError(f"Got {len(self.conditionals)} conditionals for {self.schema.d} features")

        conditionals = []
        for feature, table in zip(self.schema.features, self.conditionals, strict=True):
            table = np.asarray(table, dtype=np.float64)
            width = feature.cardinality if isinstance(feature, DiscreteFeature) else 2
            if table.shape != (r, width):
                raise StatisticsError(f"Feature '{feature.name}' parameters have shape {table.shape}, expected ({r}, {width})")
            if isinstance(feature, DiscreteFeature):
                _check_distribution(table, f"p({feature.name} | y)")
            elif np.any(table[:, 1] < VARIANCE_FLOOR):
                raise StatisticsError(f"Feature '{feature.name}' has a variance below {VARIANCE_FLOOR}")
            conditionals.append(table)

        _check_distribution(class_probs, "p(y)")
        object.__setattr__(self, "class_probs", class_probs)
        object.__setattr__(self, "conditionals", tuple(conditionals))

    def categorical(self, i: int) -> npt.NDArray[np.float64]:
        """``(r, r_i)`` table for discrete feature ``i`` (0-based)."""
        return self.conditionals[i]

    def means(self, i: int) -> npt.NDArray[np.float64]:
        return self.conditionals[i][:, 0]

    def variances(self, i: int) -> npt.NDArray[np.float64]:
        return self.conditionals[i][:, 1]

    def flat(self) -> npt.NDArray[np.float64]:
        """All components in one vector, class prior first."""
        return np.concatenate([self.class_probs, *(t.ravel() for t in self.conditionals)])

    def max_relative_deviation(self, other: "NBParams") -> float:
        """Largest componentwise ``|a - b| / max(|a|, |b|)``; zero pairs count as equal."""
        a, b = self.flat(), other.flat()
        scale = np.maximum(np.abs(a), np.abs(b))
        with np.errstate(invalid="ignore", divide="ignore"):
            deviation = np.where(scale > 0, np.abs(a - b) / scale, 0.0)
        return float(deviation.max())


def _check_distribution(probs: npt.NDArray[np.float64], what: str) -> None:
    if np.any(probs < 0) or not np.allclose(probs.sum(axis=-1), 1.0, rtol=0, atol=NORMALIZATION_TOLERANCE):
        raise StatisticsError(f"{what} is not a probability distribution")
