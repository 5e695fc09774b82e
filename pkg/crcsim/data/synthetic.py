"""Synthetic dataset generators for acceptance runs and examples."""

import time

import numpy as np

from crcsim.data.dataset import ContinuousFeature, Dataset, DiscreteFeature, FeatureSchema, FeatureSpec
from crcsim.utils.logging import get_logger

logger = get_logger(__name__)


def _class_labels(r: int) -> tuple[str, ...]:
    return tuple(str(k) for k in range(r))


def make_blobs(
    m: int,
    d: int = 2,
    r: int = 2,
    separation: float = 4.0,
    rng: np.random.Generator | None = None,
) -> Dataset:
    """Gaussian blobs with unit isotropic covariance and balanced classes.

    Args:
        m: Number of instances
        d: Number of continuous features
        r: Number of classes
        separation: Distance of each class mean from the origin
        rng: Seeded generator; a fresh default generator when omitted
    """
    rng = rng or np.random.default_rng()
    t_start = time.time()

    directions = rng.normal(size=(r, d))
    directions /= np.linalg.norm(directions, axis=1, keepdims=True)
    if r == 2:
        directions[1] = -directions[0]
    centers = directions * separation

    y = np.arange(m) % r + 1
    rng.shuffle(y)
    X = centers[y - 1] + rng.normal(size=(m, d))

    schema = FeatureSchema(
        features=tuple(ContinuousFeature(name=f"x{i + 1}") for i in range(d)),
        class_labels=_class_labels(r),
    )
    logger.debug("blobs_generated", m=m, d=d, r=r, separation=separation, seconds=round(time.time() - t_start, 3))
    return Dataset(schema=schema, X=X, y=y)


def make_categorical_mixture(
    m: int,
    d: int = 4,
    r: int = 2,
    cardinality: int = 3,
    concentration: float = 0.5,
    rng: np.random.Generator | None = None,
) -> Dataset:
    """Discrete features drawn independently per class from Dirichlet-sampled categorical tables."""
    rng = rng or np.random.default_rng()

    tables = rng.dirichlet(np.full(cardinality, concentration), size=(r, d))
    y = np.arange(m) % r + 1
    rng.shuffle(y)
    X = np.empty((m, d), dtype=np.float64)
    for i in range(d):
        for k in range(r):
            rows = np.flatnonzero(y == k + 1)
            X[rows, i] = rng.choice(cardinality, size=rows.size, p=tables[k, i]) + 1

    schema = FeatureSchema(
        features=tuple(
            DiscreteFeature(name=f"c{i + 1}", categories=tuple(str(v) for v in range(cardinality))) for i in range(d)
        ),
        class_labels=_class_labels(r),
    )
    logger.debug("categorical_mixture_generated", m=m, d=d, r=r, cardinality=cardinality)
    return _ensure_full_support(Dataset(schema=schema, X=X, y=y), rng)


def make_mixed(
    m: int,
    continuous: int = 2,
    discrete: int = 1,
    r: int = 2,
    cardinality: int = 3,
    separation: float = 1.0,
    rng: np.random.Generator | None = None,
) -> Dataset:
    """Mixed schema: blob-distributed continuous features followed by class-dependent discrete features."""
    rng = rng or np.random.default_rng()
    blobs = make_blobs(m, d=continuous, r=r, separation=separation, rng=rng)

    tables = rng.dirichlet(np.ones(cardinality), size=(r, discrete))
    X_disc = np.empty((m, discrete), dtype=np.float64)
    for i in range(discrete):
        for k in range(r):
            rows = np.flatnonzero(blobs.y == k + 1)
            X_disc[rows, i] = rng.choice(cardinality, size=rows.size, p=tables[k, i]) + 1

    features: tuple[FeatureSpec, ...] = (
        *blobs.schema.features,
        *(DiscreteFeature(name=f"c{i + 1}", categories=tuple(str(v) for v in range(cardinality))) for i in range(discrete)),
    )
    schema = FeatureSchema(features=features, class_labels=_class_labels(r))
    return _ensure_full_support(Dataset(schema=schema, X=np.hstack([blobs.X, X_disc]), y=blobs.y), rng)


def _ensure_full_support(dataset: Dataset, rng: np.random.Generator) -> Dataset:
    """Make every category of every discrete feature appear at least once.

    Written CSVs are re-inferred by distinct tokens, so an unobserved category would
    change the schema on reload.
    """
    X = dataset.X.copy()
    for i, feature in enumerate(dataset.schema.features):
        if not isinstance(feature, DiscreteFeature):
            continue
        for category in range(1, feature.cardinality + 1):
            codes = X[:, i].astype(np.int64)
            if np.any(codes == category):
                continue
            counts = np.bincount(codes, minlength=feature.cardinality + 1)
            # only overwrite instances whose category occurs more than once
            donors = np.flatnonzero(counts[codes] > 1)
            if donors.size:
                X[rng.choice(donors), i] = category
    return Dataset(schema=dataset.schema, X=X, y=dataset.y)
