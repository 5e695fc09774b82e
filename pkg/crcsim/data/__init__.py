"""Datasets, CSV ingestion and synthetic data for crcsim."""

from crcsim.data.csv_io import RawTable, dataset_to_table, infer_schema, load_csv, materialize, write_csv
from crcsim.data.dataset import (
    ContinuousFeature,
    Dataset,
    DiscreteFeature,
    FeatureSchema,
    FeatureSpec,
    check_instances,
    train_test_indices,
    train_test_split,
)
from crcsim.data.synthetic import make_blobs, make_categorical_mixture, make_mixed

__all__ = [
    "ContinuousFeature",
    "Dataset",
    "DiscreteFeature",
    "FeatureSchema",
    "FeatureSpec",
    "RawTable",
    "check_instances",
    "dataset_to_table",
    "infer_schema",
    "load_csv",
    "make_blobs",
    "make_categorical_mixture",
    "make_mixed",
    "materialize",
    "train_test_indices",
    "train_test_split",
    "write_csv",
]
