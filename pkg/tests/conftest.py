import numpy as np
import pytest

from crcsim.data import ContinuousFeature, Dataset, DiscreteFeature, FeatureSchema, make_blobs, make_mixed
from crcsim.model import StatsVector
from crcsim.utils.logging import setup_logging


@pytest.fixture(autouse=True, scope="session")
def quiet_logging():
    setup_logging(level="WARNING", pretty=False)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def continuous_schema():
    return FeatureSchema(features=(ContinuousFeature("x1"),), class_labels=("a", "b"))


@pytest.fixture
def discrete_schema():
    return FeatureSchema(features=(DiscreteFeature("c1", ("u", "v")),), class_labels=("a", "b"))


@pytest.fixture
def mixed_schema():
    return FeatureSchema(
        features=(DiscreteFeature("c1", ("u", "v", "w")), ContinuousFeature("x1")),
        class_labels=("a", "b", "c"),
    )


@pytest.fixture
def mixed_dataset():
    """Unit-scale mixed data: two Gaussian features and one 3-valued discrete feature."""
    return make_mixed(500, continuous=2, discrete=1, r=2, cardinality=3, separation=1.0, rng=np.random.default_rng(7))


@pytest.fixture
def blobs():
    return make_blobs(400, d=2, r=2, separation=4.0, rng=np.random.default_rng(3))


@pytest.fixture
def separated_dataset(continuous_schema):
    """Two far-apart clusters on which a fitted model's posterior saturates to exactly 0 and 1."""
    X = np.array([[-60.0], [-61.0], [-59.5], [60.0], [61.0], [59.0]])
    y = np.array([1, 1, 1, 2, 2, 2])
    return Dataset(continuous_schema, X, y)


def _random_stats(schema, rng, scale=1.0):
    """Valid statistics with positive counts and a positive implied variance in every block."""
    stats = StatsVector.zeros(schema)
    stats.class_block[:] = rng.uniform(0.5, 5.0, size=schema.class_cardinality) * scale
    for i, feature in enumerate(schema.features):
        block = stats.feature_block(i)
        if isinstance(feature, DiscreteFeature):
            block[:] = rng.uniform(0.5, 5.0, size=block.shape) * scale
        else:
            s1 = rng.uniform(0.5, 5.0, size=block.shape[0]) * scale
            s2 = rng.normal(size=block.shape[0]) * s1
            block[:, 0] = s1
            block[:, 1] = s2
            block[:, 2] = s2 * s2 / s1 + s1 * rng.uniform(0.5, 2.0, size=block.shape[0])
    return stats


@pytest.fixture
def random_stats():
    return _random_stats
