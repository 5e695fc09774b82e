"""CSV ingestion, schema inference and CSV export."""

import math
from collections.abc import Iterable
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import pandas as pd

from crcsim.data.dataset import ContinuousFeature, Dataset, DiscreteFeature, FeatureSchema, FeatureSpec
from crcsim.exceptions import CSVFormatError, SchemaError
from crcsim.utils.logging import get_logger

logger = get_logger(__name__)

# Columns with at most this many distinct values are treated as discrete
MAX_DISCRETE_VALUES = 10

# Data rows are reported with 1-based file line numbers; the header is line 1
_FIRST_DATA_LINE = 2


@dataclass(frozen=True)
class RawTable:
    """Untyped CSV cells plus header, with the label column resolved."""

    path: str
    header: tuple[str, ...]
    cells: tuple[tuple[str, ...], ...]
    label_index: int

    @property
    def label_name(self) -> str:
        return self.header[self.label_index]

    def column(self, index: int) -> list[str]:
        return [row[index] for row in self.cells]


def _resolve_label(path: str, header: tuple[str, ...], label_column: str | int) -> int:
    if isinstance(label_column, str) and label_column in header:
        return header.index(label_column)
    try:
        index = int(label_column)
    except (TypeError, ValueError):
        raise CSVFormatError(path, "label column not found", column=str(label_column)) from None
    if not -len(header) <= index < len(header):
        raise CSVFormatError(path, f"label column index {index} out of range for {len(header)} columns")
    return index % len(header)


def load_csv(path: str | Path, label_column: str | int = -1) -> RawTable:
    """Read a comma-separated file with one header row into string cells.

    Args:
        path: CSV file path
        label_column: Header name or column index (negative indices count from the end)

    Raises:
        CSVFormatError: Missing file, ragged rows, empty cells, missing label column or no instances
    """
    path_str = str(path)
    if not Path(path).is_file():
        raise CSVFormatError(path_str, "file not found")

    try:
        frame = pd.read_csv(path, dtype=str, keep_default_na=False, encoding="utf-8")
    except pd.errors.EmptyDataError:
        raise CSVFormatError(path_str, "no header row") from None
    except pd.errors.ParserError as e:
        raise CSVFormatError(path_str, f"ragged row ({e})") from None

    header = tuple(str(c) for c in frame.columns)
    # pandas silently promotes the first column to an index when every row has one extra cell
    if not isinstance(frame.index, pd.RangeIndex):
        raise CSVFormatError(path_str, f"rows have more cells than the {len(header)} header columns")
    if frame.empty:
        raise CSVFormatError(path_str, "no instances")

    short_rows = frame.isna().any(axis=1).to_numpy()
    if short_rows.any():
        row = int(np.argmax(short_rows))
        raise CSVFormatError(path_str, f"expected {len(header)} cells", row=row + _FIRST_DATA_LINE)

    cells = frame.to_numpy(dtype=object)
    empty = cells == ""
    if empty.any():
        row, col = (int(v) for v in np.argwhere(empty)[0])
        raise CSVFormatError(path_str, "empty cell (missing values are not supported)", row=row + _FIRST_DATA_LINE, column=header[col])

    label_index = _resolve_label(path_str, header, label_column)
    logger.debug("csv_loaded", path=path_str, rows=len(cells), columns=len(header), label=header[label_index])
    return RawTable(
        path=path_str,
        header=header,
        cells=tuple(tuple(str(v) for v in row) for row in cells),
        label_index=label_index,
    )


def _parse_float(token: str) -> float | None:
    try:
        value = float(token)
    except ValueError:
        return None
    return value if math.isfinite(value) else None


def _token_key(token: str) -> float | str:
    value = _parse_float(token)
    return token if value is None else value


def distinct_values(tokens: Iterable[str]) -> set[str]:
    """One representative token per distinct value; spellings of the same number collapse."""
    representatives: dict[float | str, str] = {}
    for token in tokens:
        key = _token_key(token)
        if key not in representatives or token < representatives[key]:
            representatives[key] = token
    return set(representatives.values())


def sort_tokens(tokens: set[str]) -> tuple[str, ...]:
    """Order category tokens numerically when all parse as numbers, otherwise lexicographically."""
    numeric = {t: _parse_float(t) for t in tokens}
    if all(v is not None for v in numeric.values()):
        return tuple(sorted(tokens, key=lambda t: (numeric[t], t)))
    return tuple(sorted(tokens))


def infer_schema(table: RawTable) -> tuple[FeatureSchema, Dataset]:
    """Infer feature kinds with the ten-distinct-values rule and materialize the dataset.

    A non-label column with at most ten distinct values becomes discrete (categories in sorted
    token order); otherwise it is continuous. Constant columns carry no information and are
    dropped with a warning.
    """
    labels = sort_tokens(set(table.column(table.label_index)))
    if len(labels) < 2:
        raise SchemaError(f"{table.path}: label column '{table.label_name}' has {len(labels)} distinct value(s), need 2")

    features: list[FeatureSpec] = []
    for index, name in enumerate(table.header):
        if index == table.label_index:
            continue
        distinct = distinct_values(table.column(index))
        if len(distinct) == 1:
            logger.warning("constant_column_dropped", column=name, value=next(iter(distinct)))
            continue
        if len(distinct) <= MAX_DISCRETE_VALUES:
            features.append(DiscreteFeature(name=name, categories=sort_tokens(distinct)))
        else:
            features.append(ContinuousFeature(name=name))

    schema = FeatureSchema(features=tuple(features), class_labels=labels, label_name=table.label_name)
    dataset = materialize(table, schema)
    logger.info(
        "schema_inferred",
        path=table.path,
        m=dataset.m,
        d=schema.d,
        discrete=int(schema.discrete_mask.sum()),
        continuous=int((~schema.discrete_mask).sum()),
        classes=schema.class_cardinality,
    )
    return schema, dataset


def materialize(table: RawTable, schema: FeatureSchema) -> Dataset:
    """Map a raw table onto an existing schema, matching columns by header name."""
    columns = {name: i for i, name in enumerate(table.header)}
    m = len(table.cells)
    X = np.empty((m, schema.d), dtype=np.float64)

    for j, feature in enumerate(schema.features):
        if feature.name not in columns:
            raise CSVFormatError(table.path, "schema column missing", column=feature.name)
        tokens = table.column(columns[feature.name])
        if isinstance(feature, DiscreteFeature):
            codes = {_token_key(token): k + 1 for k, token in enumerate(feature.categories)}
            for row, token in enumerate(tokens):
                code = codes.get(_token_key(token))
                if code is None:
                    raise CSVFormatError(
                        table.path, f"unknown category '{token}'", row=row + _FIRST_DATA_LINE, column=feature.name
                    )
                X[row, j] = code
        else:
            for row, token in enumerate(tokens):
                value = _parse_float(token)
                if value is None:
                    raise CSVFormatError(
                        table.path, f"non-numeric token '{token}' in continuous column", row=row + _FIRST_DATA_LINE,
                        column=feature.name,
                    )
                X[row, j] = value

    label_codes = {token: k + 1 for k, token in enumerate(schema.class_labels)}
    y = np.empty(m, dtype=np.int64)
    for row, token in enumerate(table.column(table.label_index)):
        if token not in label_codes:
            raise CSVFormatError(table.path, f"unknown label '{token}'", row=row + _FIRST_DATA_LINE, column=table.label_name)
        y[row] = label_codes[token]

    return Dataset(schema=schema, X=X, y=y)


def dataset_to_table(dataset: Dataset, path: str = "<memory>") -> RawTable:
    """Render a dataset back into string cells using its schema's original tokens."""
    schema = dataset.schema
    rendered: list[list[str]] = []
    for j, feature in enumerate(schema.features):
        column = dataset.X[:, j]
        if isinstance(feature, DiscreteFeature):
            rendered.append([feature.categories[int(v) - 1] for v in column])
        else:
            rendered.append([repr(float(v)) for v in column])
    rendered.append([schema.class_labels[int(v) - 1] for v in dataset.y])

    header = (*schema.feature_names, schema.label_name)
    cells = tuple(zip(*rendered, strict=True)) if dataset.m else ()
    return RawTable(path=path, header=header, cells=cells, label_index=len(header) - 1)


def write_csv(dataset: Dataset, path: str | Path) -> None:
    """Write a dataset as CSV with the label as the last column."""
    table = dataset_to_table(dataset, str(path))
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    frame = pd.DataFrame(list(table.cells), columns=list(table.header))
    frame.to_csv(path, index=False)
    logger.debug("csv_written", path=str(path), rows=dataset.m)
