"""Feature schemas and labeled datasets."""

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
import numpy.typing as npt

from crcsim.exceptions import DatasetValidationError, SchemaError, SplitSizeError


@dataclass(frozen=True)
class DiscreteFeature:
    """A categorical feature whose values are category indices 1..cardinality."""

    name: str
    categories: tuple[str, ...]

    @property
    def cardinality(self) -> int:
        return len(self.categories)


@dataclass(frozen=True)
class ContinuousFeature:
    """A real-valued feature modeled with a class-conditional Gaussian."""

    name: str


FeatureSpec = DiscreteFeature | ContinuousFeature


@dataclass(frozen=True)
class FeatureSchema:
    """Ordered feature declarations plus the class label support.

    Attributes:
        features: Feature specs in column order; fixed for the lifetime of an experiment
        class_labels: Original label tokens; class index ``k`` (1-based) maps to ``class_labels[k - 1]``
        label_name: Header of the label column
    """

    features: tuple[FeatureSpec, ...]
    class_labels: tuple[str, ...]
    label_name: str = "y"

    def __post_init__(self) -> None:
        if not self.features:
            raise SchemaError("A schema needs at least one feature")
        if len(self.class_labels) < 2:
            raise SchemaError(f"Need at least 2 class labels, got {len(self.class_labels)}")
        for feature in self.features:
            if isinstance(feature, DiscreteFeature) and feature.cardinality < 2:
                raise SchemaError(f"Discrete feature '{feature.name}' needs at least 2 categories")

    @property
    def d(self) -> int:
        return len(self.features)

    @property
    def class_cardinality(self) -> int:
        return len(self.class_labels)

    @property
    def feature_names(self) -> tuple[str, ...]:
        return tuple(f.name for f in self.features)

    @cached_property
    def discrete_mask(self) -> npt.NDArray[np.bool_]:
        return np.array([isinstance(f, DiscreteFeature) for f in self.features], dtype=np.bool_)


def check_instances(schema: FeatureSchema, X: npt.NDArray[np.float64]) -> None:
    """Raise if any instance lies outside the schema's support.

    Raises:
        DatasetValidationError: Wrong shape, non-finite values, or discrete codes outside ``1..r_i``
    """
    if X.ndim != 2 or X.shape[1] != schema.d:
        raise DatasetValidationError(f"Expected an (m, {schema.d}) instance matrix, got shape {X.shape}")
    for i, feature in enumerate(schema.features):
        column = X[:, i]
        if not np.all(np.isfinite(column)):
            raise DatasetValidationError(f"Feature '{feature.name}' has non-finite values")
        if isinstance(feature, DiscreteFeature) and column.size:
            valid = (column == np.round(column)) & (column >= 1) & (column <= feature.cardinality)
            if not np.all(valid):
                row = int(np.argmin(valid))
                raise DatasetValidationError(
                    f"Feature '{feature.name}' value {column[row]} at instance {row} outside 1..{feature.cardinality}"
                )


@dataclass(frozen=True, eq=False)
class Dataset:
    """Labeled instances under a schema.

    Discrete values are stored as category indices ``1..r_i`` (as floats, alongside the
    continuous columns), labels as class indices ``1..r``.
    """

    schema: FeatureSchema
    X: npt.NDArray[np.float64]
    y: npt.NDArray[np.int64]
    source_indices: npt.NDArray[np.int64] | None = field(default=None, repr=False)

    def __post_init__(self) -> None:
        X = np.asarray(self.X, dtype=np.float64)
        y = np.asarray(self.y, dtype=np.int64)
        if X.ndim != 2 or X.shape[1] != self.schema.d:
            raise DatasetValidationError(f"Expected an (m, {self.schema.d}) instance matrix, got shape {X.shape}")
        if y.shape != (X.shape[0],):
            raise DatasetValidationError(f"Got {y.shape[0] if y.ndim else 0} labels for {X.shape[0]} instances")
        object.__setattr__(self, "X", X)
        object.__setattr__(self, "y", y)
        r = self.schema.class_cardinality
        if self.m and (y.min() < 1 or y.max() > r):
            raise DatasetValidationError(f"Labels must lie in 1..{r}")
        check_instances(self.schema, X)

    @property
    def m(self) -> int:
        return int(self.X.shape[0])

    def subset(self, indices: npt.ArrayLike) -> "Dataset":
        """Return the instances at ``indices`` (positions into this dataset)."""
        idx = np.asarray(indices, dtype=np.int64)
        origin = self.source_indices[idx] if self.source_indices is not None else idx
        return Dataset(self.schema, self.X[idx], self.y[idx], source_indices=origin)

    def equals(self, other: "Dataset") -> bool:
        return (
            self.schema == other.schema
            and self.X.shape == other.X.shape
            and bool(np.array_equal(self.X, other.X))
            and bool(np.array_equal(self.y, other.y))
        )


def train_test_indices(
    m: int, train_size: int, test_size: int, rng: np.random.Generator
) -> tuple[npt.NDArray[np.int64], npt.NDArray[np.int64]]:
    """Draw disjoint uniformly random train/test index sets."""
    if train_size < 0 or test_size < 0 or train_size + test_size > m:
        raise SplitSizeError(train_size + test_size, m)
    permutation = rng.permutation(m)
    return permutation[:train_size], permutation[train_size : train_size + test_size]


def train_test_split(
    dataset: Dataset, train_size: int, test_size: int, rng: np.random.Generator
) -> tuple[Dataset, Dataset]:
    """Split a dataset into disjoint random train and test subsets, deterministic given ``rng``."""
    train_idx, test_idx = train_test_indices(dataset.m, train_size, test_size, rng)
    return dataset.subset(train_idx), dataset.subset(test_idx)
