"""Naive Bayes statistics mapping, parameter mapping and posterior.

Discrete features contribute per-class category counts; continuous features contribute the
per-class moment triple ``(sum w, sum w·x, sum w·x²)`` of a Gaussian. All mappings are built on
one weighted accumulator so labeled statistics (one-hot weights) and expected statistics
(posterior weights) follow the same arithmetic.
"""

import numpy as np
import numpy.typing as npt
from scipy.special import logsumexp

from crcsim.data.dataset import Dataset, DiscreteFeature, FeatureSchema, check_instances
from crcsim.exceptions import DatasetValidationError, EmptyDatasetError, StatisticsError
from crcsim.model.params import NBParams
from crcsim.model.stats import COUNT_FLOOR, VARIANCE_FLOOR, StatsVector


def _as_matrix(x: npt.ArrayLike) -> npt.NDArray[np.float64]:
    X = np.asarray(x, dtype=np.float64)
    return X[np.newaxis, :] if X.ndim == 1 else X


def one_hot(codes: npt.NDArray[np.float64], k: int) -> npt.NDArray[np.float64]:
    """``(m, k)`` indicator matrix of 1-based codes."""
    return (codes.astype(np.int64)[:, np.newaxis] == np.arange(1, k + 1)).astype(np.float64)


def weighted_stats(schema: FeatureSchema, X: npt.NDArray[np.float64], W: npt.NDArray[np.float64]) -> StatsVector:
    """Accumulate statistics of instances ``X`` with class weights ``W`` of shape ``(m, r)``."""
    stats = StatsVector.zeros(schema)
    stats.class_block[:] = W.sum(axis=0)
    for i, feature in enumerate(schema.features):
        block = stats.feature_block(i)
        column = X[:, i]
        if isinstance(feature, DiscreteFeature):
            block[:] = W.T @ one_hot(column, feature.cardinality)
        else:
            block[:, 0] = W.sum(axis=0)
            block[:, 1] = W.T @ column
            block[:, 2] = W.T @ (column * column)
    return stats


def stat_map_instance(x: npt.ArrayLike, y: int, schema: FeatureSchema) -> StatsVector:
    """Statistics of a single labeled instance; ``y`` is a 1-based class index."""
    X = _as_matrix(x)
    check_instances(schema, X)
    if not 1 <= y <= schema.class_cardinality:
        raise DatasetValidationError(f"Class index {y} outside 1..{schema.class_cardinality}")
    return weighted_stats(schema, X, one_hot(np.array([y], dtype=np.float64), schema.class_cardinality))


def stat_map_dataset(dataset: Dataset) -> StatsVector:
    """Sum of instance statistics over a labeled dataset."""
    if dataset.m == 0:
        raise EmptyDatasetError("stat_map_dataset")
    W = one_hot(dataset.y.astype(np.float64), dataset.schema.class_cardinality)
    return weighted_stats(dataset.schema, dataset.X, W)


def prob_stat_map(X: npt.ArrayLike, params: NBParams) -> StatsVector:
    """Expected statistics of unlabeled instances under the model's class posterior."""
    X = _as_matrix(X)
    check_instances(params.schema, X)
    return weighted_stats(params.schema, X, posterior(params, X))


def param_map(stats: StatsVector) -> NBParams:
    """Closed-form parameters from (projected) statistics.

    Raises:
        StatisticsError: A count or zeroth-moment denominator is below the count floor
    """
    schema = stats.schema
    s0 = stats.class_block
    if np.any(s0 < COUNT_FLOOR):
        raise StatisticsError("Class counts below the count floor; statistics were not projected")

    conditionals = []
    for i, feature in enumerate(schema.features):
        block = stats.feature_block(i)
        if isinstance(feature, DiscreteFeature):
            totals = block.sum(axis=1, keepdims=True)
            if np.any(block < 0) or np.any(totals < COUNT_FLOOR):
                raise StatisticsError(f"Counts of feature '{feature.name}' below the count floor")
            conditionals.append(block / totals)
        else:
            s1, s2, s3 = block[:, 0], block[:, 1], block[:, 2]
            if np.any(s1 < COUNT_FLOOR):
                raise StatisticsError(f"Zeroth moments of feature '{feature.name}' below the count floor")
            mean = s2 / s1
            variance = np.maximum(s3 / s1 - mean * mean, VARIANCE_FLOOR)
            conditionals.append(np.column_stack([mean, variance]))

    return NBParams(schema=schema, class_probs=s0 / s0.sum(), conditionals=tuple(conditionals))


def joint_log_likelihood(params: NBParams, X: npt.NDArray[np.float64]) -> npt.NDArray[np.float64]:
    """``log p(x, y)`` for every instance and class, shape ``(m, r)``."""
    with np.errstate(divide="ignore"):
        jll = np.tile(np.log(params.class_probs), (X.shape[0], 1))
        for i, feature in enumerate(params.schema.features):
            column = X[:, i]
            if isinstance(feature, DiscreteFeature):
                jll += np.log(params.categorical(i))[:, column.astype(np.int64) - 1].T
            else:
                mean, variance = params.means(i), params.variances(i)
                jll -= 0.5 * np.log(2.0 * np.pi * variance)
                jll -= 0.5 * (column[:, np.newaxis] - mean) ** 2 / variance
    return jll


def posterior(params: NBParams, x: npt.ArrayLike) -> npt.NDArray[np.float64]:
    """Class posterior ``p(y | x)`` by Bayes' rule in log space.

    Accepts one instance (returns shape ``(r,)``) or a matrix of instances (returns ``(m, r)``).
    """
    single = np.asarray(x).ndim == 1
    X = _as_matrix(x)
    check_instances(params.schema, X)
    jll = joint_log_likelihood(params, X)
    probs = np.exp(jll - logsumexp(jll, axis=1, keepdims=True))
    return probs[0] if single else probs


def predict(params: NBParams, x: npt.ArrayLike) -> npt.NDArray[np.int64] | int:
    """Most probable 1-based class; ties go to the lowest index."""
    probs = posterior(params, x)
    labels = np.argmax(probs, axis=-1) + 1
    return int(labels) if probs.ndim == 1 else labels.astype(np.int64)


def uniform_init(schema: FeatureSchema, m0: float) -> StatsVector:
    """Statistics of equivalent sample size ``m0`` whose classifier has a uniform posterior.

    Continuous triples are ``(m0/r, 0, m0/r)``: every class gets mean 0 and variance 1.
    """
    if not m0 > 0:
        raise StatisticsError(f"Equivalent sample size must be positive, got {m0}")
    r = schema.class_cardinality
    stats = StatsVector.zeros(schema)
    stats.class_block[:] = m0 / r
    for i, feature in enumerate(schema.features):
        block = stats.feature_block(i)
        if isinstance(feature, DiscreteFeature):
            block[:] = m0 / (r * feature.cardinality)
        else:
            block[:, 0] = m0 / r
            block[:, 2] = m0 / r
    return stats


def evaluate(params: NBParams, dataset: Dataset) -> tuple[float, float]:
    """Return ``(0-1 error, soft 0-1 error)`` of the classifier on a labeled dataset."""
    if dataset.m == 0:
        raise EmptyDatasetError("evaluate")
    probs = posterior(params, dataset.X)
    predictions = np.argmax(probs, axis=1) + 1
    err01 = float(np.mean(predictions != dataset.y))
    soft_err = float(np.mean(1.0 - probs[np.arange(dataset.m), dataset.y - 1]))
    return err01, soft_err
