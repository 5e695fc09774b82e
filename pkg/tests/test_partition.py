import numpy as np
import pandas as pd
import pytest

from crcsim.data import Dataset
from crcsim.exceptions import DegenerateCovarianceError, InsufficientDataError, PartitionError
from crcsim.partition import (
    PartitionMode,
    PartitionPlan,
    first_principal_component,
    project_onto_component,
    split,
    split_drift_x,
    split_drift_xy,
    split_drift_y,
    split_iid,
    standardized_covariance,
)


def line_dataset(schema, x, y):
    return Dataset(schema, np.asarray(x, dtype=np.float64).reshape(-1, 1), np.asarray(y))


def block_labels(plan, dataset):
    return [dataset.y[block].tolist() for block in plan.assignment]


def test_iid_blocks_are_disjoint_and_sized(blobs):
    plan = split_iid(blobs, 4, 50, np.random.default_rng(0))
    assert plan.mode is PartitionMode.IID
    assert [len(block) for block in plan.assignment] == [50] * 4
    sample = plan.global_sample
    assert len(set(sample.tolist())) == 200
    assert sample.min() >= 0 and sample.max() < blobs.m


def test_split_is_deterministic(blobs):
    first = split(blobs, "drift_x", 4, 50, np.random.default_rng(1))
    second = split(blobs, PartitionMode.DRIFT_X, 4, 50, np.random.default_rng(1))
    assert first.assignment == second.assignment


def test_split_rejects_oversized_request(blobs):
    with pytest.raises(InsufficientDataError):
        split_iid(blobs, 5, 81, np.random.default_rng(0))


def test_local_datasets_follow_plan(blobs):
    plan = split_iid(blobs, 3, 20, np.random.default_rng(2))
    local = plan.local_datasets(blobs)
    assert [dataset.m for dataset in local] == [20, 20, 20]
    assert local[1].source_indices.tolist() == plan.assignment[1]


def test_principal_component_rank_one():
    x = np.array([1.0, 2.0, 3.0, 4.0])
    vector = first_principal_component(np.column_stack([x, 2.0 * x]))
    np.testing.assert_allclose(vector, [1.0 / np.sqrt(2.0), 1.0 / np.sqrt(2.0)], atol=1e-12)


def test_principal_component_matches_eigendecomposition():
    rng = np.random.default_rng(5)
    latent = rng.normal(size=500)
    X = np.column_stack(
        [
            latent + 0.1 * rng.normal(size=500),
            2.0 * latent + 0.1 * rng.normal(size=500),
            rng.normal(size=500),
        ]
    )
    _, eigenvectors = np.linalg.eigh(standardized_covariance(X))
    expected = eigenvectors[:, -1]
    if expected[np.argmax(np.abs(expected))] < 0:
        expected = -expected
    np.testing.assert_allclose(first_principal_component(X), expected, atol=1e-8)


def test_principal_component_on_random_matrices():
    rng = np.random.default_rng(11)
    for _ in range(100):
        d = int(rng.integers(2, 6))
        X = rng.normal(size=(60, d)) @ rng.normal(size=(d, d))
        _, eigenvectors = np.linalg.eigh(standardized_covariance(X))
        cosine = abs(float(first_principal_component(X) @ eigenvectors[:, -1]))
        assert np.arccos(min(cosine, 1.0)) < 1e-6


def test_principal_component_sign_rule():
    x = np.array([1.0, 2.0, 3.0, 5.0])
    vector = first_principal_component(np.column_stack([x, -3.0 * x + 0.01 * np.array([0.0, 1.0, 0.0, 1.0])]))
    assert vector[np.argmax(np.abs(vector))] > 0


def test_principal_component_degenerate():
    with pytest.raises(DegenerateCovarianceError):
        first_principal_component(np.ones((5, 3)))
    with pytest.raises(DegenerateCovarianceError):
        first_principal_component(np.array([[1.0, 2.0]]))


def test_drift_x_blocks_are_contiguous_in_one_dimension(continuous_schema):
    x = np.random.default_rng(3).permutation(100)
    dataset = line_dataset(continuous_schema, x, np.arange(100) % 2 + 1)
    plan = split_drift_x(dataset, 4, 20, np.random.default_rng(4))
    values = [dataset.X[block, 0] for block in plan.assignment]
    for left, right in zip(values, values[1:], strict=False):
        assert left.max() < right.min()


def test_drift_x_orders_sample_along_component(blobs):
    plan = split_drift_x(blobs, 5, 40, np.random.default_rng(6))
    scores = project_onto_component(blobs.X[plan.global_sample])
    assert np.all(np.diff(scores) >= -1e-9)


def test_drift_y_balanced_classes_give_single_class_nodes(continuous_schema):
    dataset = line_dataset(continuous_schema, np.arange(8), [1, 1, 1, 1, 2, 2, 2, 2])
    plan = split_drift_y(dataset, 4, 2, np.random.default_rng(0))
    assert [sorted(labels) for labels in block_labels(plan, dataset)] == [[1, 1], [2, 2], [1, 1], [2, 2]]


def test_drift_y_exhausted_class_hands_over(continuous_schema):
    dataset = line_dataset(continuous_schema, np.arange(8), [1, 1, 1, 1, 1, 1, 2, 2])
    plan = split_drift_y(dataset, 4, 2, np.random.default_rng(0))
    assert [sorted(labels) for labels in block_labels(plan, dataset)] == [[1, 1], [2, 2], [1, 1], [1, 1]]


def test_drift_y_mixes_classes_only_when_forced(continuous_schema):
    dataset = line_dataset(continuous_schema, np.arange(8), [1, 1, 1, 1, 1, 2, 2, 2])
    plan = split_drift_y(dataset, 4, 2, np.random.default_rng(0))
    labels = block_labels(plan, dataset)
    assert [len(set(block)) for block in labels] == [1, 1, 1, 2]
    assert labels[3] == [2, 1]


def test_drift_xy_sorts_within_class(continuous_schema):
    dataset = line_dataset(continuous_schema, np.arange(8), [1, 2, 1, 2, 1, 2, 1, 2])
    plan = split_drift_xy(dataset, 4, 2, np.random.default_rng(0))
    assert [dataset.X[block, 0].tolist() for block in plan.assignment] == [
        [0.0, 2.0],
        [1.0, 3.0],
        [4.0, 6.0],
        [5.0, 7.0],
    ]


@pytest.mark.parametrize("mode", list(PartitionMode))
def test_every_mode_partitions_a_sample(blobs, mode):
    plan = split(blobs, mode, 4, 30, np.random.default_rng(7))
    assert plan.mode is mode
    assert len(set(plan.global_sample.tolist())) == 120


def test_plan_validation():
    with pytest.raises(PartitionError):
        PartitionPlan(mode=PartitionMode.IID, n=2, m_v=1, assignment=[[0]])
    with pytest.raises(PartitionError):
        PartitionPlan(mode=PartitionMode.IID, n=2, m_v=2, assignment=[[0, 1], [2]])
    with pytest.raises(PartitionError):
        PartitionPlan(mode=PartitionMode.IID, n=2, m_v=2, assignment=[[0, 1], [1, 2]])


def test_plan_to_csv(tmp_path):
    plan = PartitionPlan(mode=PartitionMode.IID, n=2, m_v=2, assignment=[[4, 0], [3, 1]])
    path = tmp_path / "partition.csv"
    plan.to_csv(path)
    frame = pd.read_csv(path)
    assert list(frame.columns) == ["node", "global_index"]
    assert frame["node"].tolist() == [1, 1, 2, 2]
    assert frame["global_index"].tolist() == [4, 0, 3, 1]
