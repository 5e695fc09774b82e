import numpy as np
import pytest

from crcsim.data import (
    ContinuousFeature,
    Dataset,
    DiscreteFeature,
    FeatureSchema,
    dataset_to_table,
    infer_schema,
    load_csv,
    make_blobs,
    make_categorical_mixture,
    make_mixed,
    materialize,
    train_test_split,
    write_csv,
)
from crcsim.exceptions import CSVFormatError, DatasetValidationError, SchemaError, SplitSizeError


def write(tmp_path, text, name="data.csv"):
    path = tmp_path / name
    path.write_text(text)
    return path


def test_schema_requires_two_classes():
    with pytest.raises(SchemaError):
        FeatureSchema(features=(ContinuousFeature("x"),), class_labels=("only",))


def test_schema_rejects_single_category():
    with pytest.raises(SchemaError):
        FeatureSchema(features=(DiscreteFeature("c", ("1",)),), class_labels=("a", "b"))


def test_dataset_rejects_out_of_support(discrete_schema):
    with pytest.raises(DatasetValidationError):
        Dataset(discrete_schema, np.array([[3.0]]), np.array([1]))
    with pytest.raises(DatasetValidationError):
        Dataset(discrete_schema, np.array([[1.0]]), np.array([3]))


def test_dataset_rejects_non_finite(continuous_schema):
    with pytest.raises(DatasetValidationError):
        Dataset(continuous_schema, np.array([[np.nan]]), np.array([1]))


def test_subset_tracks_source_indices(continuous_schema):
    dataset = Dataset(continuous_schema, np.arange(6.0).reshape(-1, 1), np.array([1, 2, 1, 2, 1, 2]))
    nested = dataset.subset([5, 3, 1]).subset([0, 2])
    assert nested.source_indices.tolist() == [5, 1]
    assert nested.X[:, 0].tolist() == [5.0, 1.0]


def test_infer_schema_ten_value_rule(tmp_path):
    rows = ["a,b,label"] + [f"{i % 10},{i * 0.5},{'yes' if i % 2 else 'no'}" for i in range(30)]
    _, dataset = infer_schema(load_csv(write(tmp_path, "\n".join(rows) + "\n")))
    a, b = dataset.schema.features
    assert isinstance(a, DiscreteFeature)
    assert a.categories == tuple(str(v) for v in range(10))
    assert isinstance(b, ContinuousFeature)
    assert dataset.schema.class_labels == ("no", "yes")
    assert dataset.m == 30


def test_numeric_tokens_sort_numerically(tmp_path):
    rows = ["c,y"] + [f"{v},{i % 2}" for i, v in enumerate(["10", "9", "2", "10", "9", "2"])]
    _, dataset = infer_schema(load_csv(write(tmp_path, "\n".join(rows) + "\n")))
    assert dataset.schema.features[0].categories == ("2", "9", "10")
    assert dataset.X[:, 0].tolist() == [3.0, 2.0, 1.0, 3.0, 2.0, 1.0]


def test_label_column_by_name(tmp_path):
    path = write(tmp_path, "y,x\n1,0.5\n2,0.7\n1,0.1\n")
    table = load_csv(path, label_column="y")
    assert table.label_name == "y"
    _, dataset = infer_schema(table)
    assert dataset.schema.feature_names == ("x",)


def test_constant_column_is_dropped(tmp_path):
    path = write(tmp_path, "k,x,y\n1,0.5,a\n1,0.7,b\n1,0.1,a\n")
    _, dataset = infer_schema(load_csv(path))
    assert dataset.schema.feature_names == ("x",)


@pytest.mark.parametrize(
    "text",
    [
        "x,y\n1,2,3\n4,5\n",
        "x,y\n1\n2,a\n",
        "x,y\n,a\n2,b\n",
        "x,y\n",
    ],
)
def test_malformed_csv_raises(tmp_path, text):
    with pytest.raises(CSVFormatError):
        load_csv(write(tmp_path, text))


def test_missing_file_raises(tmp_path):
    with pytest.raises(CSVFormatError, match="file not found"):
        load_csv(tmp_path / "absent.csv")


def test_single_label_raises(tmp_path):
    with pytest.raises(SchemaError):
        infer_schema(load_csv(write(tmp_path, "x,y\n1,a\n2,a\n")))


def test_materialize_rejects_unknown_category(tmp_path):
    schema, _ = infer_schema(load_csv(write(tmp_path, "c,y\nu,a\nv,b\n", "train.csv")))
    with pytest.raises(CSVFormatError, match="unknown category"):
        materialize(load_csv(write(tmp_path, "c,y\nw,a\n", "test.csv")), schema)


def test_csv_round_trip(tmp_path):
    dataset = make_mixed(60, continuous=2, discrete=2, r=3, rng=np.random.default_rng(0))
    path = tmp_path / "mixed.csv"
    write_csv(dataset, path)
    schema, reloaded = infer_schema(load_csv(path))
    assert schema == dataset.schema
    assert reloaded.equals(dataset)


def test_numeric_spellings_count_as_one_value(tmp_path):
    tokens = ["1.0", "1.00", *[str(v) for v in range(2, 11)]]
    rows = ["x,y"] + [f"{token},{i % 2}" for i, token in enumerate(tokens)]
    _, dataset = infer_schema(load_csv(write(tmp_path, "\n".join(rows) + "\n")))
    feature = dataset.schema.features[0]
    assert isinstance(feature, DiscreteFeature)
    assert feature.categories[0] == "1.0"
    assert len(feature.categories) == 10
    assert dataset.X[:2, 0].tolist() == [1.0, 1.0]


def test_round_trip_keeps_feature_kinds(tmp_path):
    tokens = ["0.5", "0.50", *[f"{v}.5" for v in range(1, 10)]]
    rows = ["x,y"] + [f"{token},{i % 2}" for i, token in enumerate(tokens)]
    schema, dataset = infer_schema(load_csv(write(tmp_path, "\n".join(rows) + "\n")))
    path = tmp_path / "copy.csv"
    write_csv(dataset, path)
    reloaded_schema, reloaded = infer_schema(load_csv(path))
    assert reloaded_schema == schema
    assert reloaded.equals(dataset)


def test_dataset_to_table_puts_label_last(blobs):
    table = dataset_to_table(blobs)
    assert table.header == ("x1", "x2", "y")
    assert table.label_index == 2


def test_train_test_split_is_disjoint_and_deterministic(blobs):
    train, test = train_test_split(blobs, 100, 50, np.random.default_rng(1))
    again, _ = train_test_split(blobs, 100, 50, np.random.default_rng(1))
    assert train.m == 100 and test.m == 50
    assert not set(train.source_indices.tolist()) & set(test.source_indices.tolist())
    assert train.source_indices.tolist() == again.source_indices.tolist()


def test_train_test_split_too_large(blobs):
    with pytest.raises(SplitSizeError):
        train_test_split(blobs, 300, 101, np.random.default_rng(1))


def test_blobs_are_balanced():
    dataset = make_blobs(101, d=3, r=2, rng=np.random.default_rng(0))
    counts = np.bincount(dataset.y, minlength=3)[1:]
    assert abs(counts[0] - counts[1]) <= 1
    assert dataset.X.shape == (101, 3)


def test_categorical_mixture_has_full_support():
    dataset = make_categorical_mixture(20, d=3, cardinality=4, concentration=0.1, rng=np.random.default_rng(5))
    for i in range(3):
        assert set(dataset.X[:, i].astype(int).tolist()) == {1, 2, 3, 4}
