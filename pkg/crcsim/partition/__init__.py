"""Partitioning a global training set across nodes, i.i.d. or with drift."""

from crcsim.partition.pca import first_principal_component, project_onto_component, standardize, standardized_covariance
from crcsim.partition.plan import PartitionMode, PartitionPlan
from crcsim.partition.splitters import SPLITTERS, split, split_drift_x, split_drift_xy, split_drift_y, split_iid

__all__ = [
    "SPLITTERS",
    "PartitionMode",
    "PartitionPlan",
    "first_principal_component",
    "project_onto_component",
    "split",
    "split_drift_x",
    "split_drift_xy",
    "split_drift_y",
    "split_iid",
    "standardize",
    "standardized_covariance",
]
