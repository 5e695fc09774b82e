from concurrent.futures import ThreadPoolExecutor

import numpy as np
import pandas as pd
import pytest

from crcsim.calibration import project
from crcsim.data import Dataset
from crcsim.exceptions import CalibrationError, EmptyDatasetError, NodeCountMismatchError, SimulationError
from crcsim.model import NBParams, param_map, stat_map_dataset, uniform_init
from crcsim.network import Graph, NeighborhoodMode, RewireSchedule, TopologySpec, chain
from crcsim.partition import split_iid
from crcsim.sim import (
    CONVERGENCE_GAP,
    METRIC_COLUMNS,
    CRCSettings,
    NodeState,
    RoundEvaluator,
    aggregation_neighbors,
    crc_round,
    evaluate_round,
    m0_heuristic,
    metrics_frame,
    rounds_to_converge,
    run_baseline,
    run_crc,
    write_metrics_csv,
)


@pytest.fixture
def local_blobs(blobs):
    plan = split_iid(blobs, 4, 50, np.random.default_rng(0))
    return plan.local_datasets(blobs)


def chain_schedule():
    return RewireSchedule(topology=TopologySpec.parse("chain"))


def test_m0_heuristic():
    assert m0_heuristic(1000, 0.05, 20) == pytest.approx(1000.0)
    assert m0_heuristic(100, 0.5, 4) == 50.0
    with pytest.raises(CalibrationError):
        m0_heuristic(100, 0.0, 4)


def test_settings_validation():
    with pytest.raises(CalibrationError):
        CRCSettings(t_max=0)
    with pytest.raises(CalibrationError):
        CRCSettings(iterations=0)
    with pytest.raises(CalibrationError):
        CRCSettings(m0=0.0)
    with pytest.raises(SimulationError):
        CRCSettings(workers=0)


def test_aggregation_neighbors():
    graph = Graph.from_edges(3, [(1, 2)])
    assert aggregation_neighbors(graph, 1, NeighborhoodMode.CLOSED) == (1, 2)
    assert aggregation_neighbors(graph, 1, NeighborhoodMode.OPEN) == (2,)
    assert aggregation_neighbors(graph, 3, NeighborhoodMode.OPEN) == (3,)


def test_first_round_aggregates_the_initialization(local_blobs):
    settings = CRCSettings(t_max=2, m0=500.0)
    result = run_crc(settings, local_blobs, chain_schedule(), keep_aggregates=True)
    init = project(uniform_init(local_blobs[0].schema, 500.0))
    assert len(result.aggregated) == 2
    assert all(aggregate.allclose(init) for aggregate in result.aggregated[0])


def test_round_is_independent_of_update_order(local_blobs):
    settings = CRCSettings(m0=500.0)
    init = uniform_init(local_blobs[0].schema, 500.0)
    states = [NodeState(v, d, init, param_map(init)) for v, d in enumerate(local_blobs, start=1)]
    graph = chain(4)
    forward, _ = crc_round(states, graph, settings)
    backward, _ = crc_round(states, graph, settings, order=[4, 3, 2, 1])
    with ThreadPoolExecutor(max_workers=3) as executor:
        threaded, _ = crc_round(states, graph, settings, executor=executor, order=[2, 4, 1, 3])
    for a, b, c in zip(forward, backward, threaded, strict=True):
        assert a.v == b.v == c.v
        np.testing.assert_array_equal(a.stats.values, b.stats.values)
        np.testing.assert_array_equal(a.stats.values, c.stats.values)


def test_round_order_must_cover_every_node(local_blobs):
    init = uniform_init(local_blobs[0].schema, 500.0)
    states = [NodeState(v, d, init, param_map(init)) for v, d in enumerate(local_blobs, start=1)]
    with pytest.raises(SimulationError):
        crc_round(states, chain(4), CRCSettings(), order=[1, 2, 3])


def test_workers_do_not_change_results(local_blobs):
    schedule = RewireSchedule(period=2, seed=11)
    single = run_crc(CRCSettings(t_max=6, m0=500.0), local_blobs, schedule)
    pooled = run_crc(CRCSettings(t_max=6, m0=500.0, workers=4), local_blobs, schedule)
    for a, b in zip(single.states, pooled.states, strict=True):
        np.testing.assert_array_equal(a.stats.values, b.stats.values)


def test_node_count_must_match_graph(local_blobs):
    with pytest.raises(NodeCountMismatchError):
        run_crc(CRCSettings(t_max=1), local_blobs, chain_schedule(), graph=chain(3))


def test_empty_local_dataset_is_rejected(local_blobs):
    schema = local_blobs[0].schema
    empty = Dataset(schema, np.empty((0, 2)), np.empty(0, dtype=np.int64))
    with pytest.raises(EmptyDatasetError):
        run_crc(CRCSettings(t_max=1), [*local_blobs[:3], empty], chain_schedule())


def test_crc_learns_separable_blobs(blobs, local_blobs):
    global_train = Dataset(
        blobs.schema, np.vstack([d.X for d in local_blobs]), np.concatenate([d.y for d in local_blobs])
    )
    held_out = np.setdiff1d(np.arange(blobs.m), np.concatenate([d.source_indices for d in local_blobs]))
    global_test = blobs.subset(held_out)
    baseline = run_baseline("rc", global_train, lr=0.1, t_max=20)
    evaluator = RoundEvaluator(global_train, global_test, baseline.train_err, 0.0)

    settings = CRCSettings(t_max=20, m0=m0_heuristic(global_train.m, 0.1, 4))
    result = run_crc(settings, local_blobs, chain_schedule(), evaluator=evaluator)

    assert [m.t for m in result.metrics] == list(range(1, 21))
    assert result.metrics[-1].test_err_mean <= 0.05
    assert len(result.metrics[-1].node_test_err) == 4


def flipped_params(schema):
    return NBParams(schema, np.array([0.5, 0.5]), (np.array([[60.0, 1.0], [-60.0, 1.0]]),))


def test_evaluate_round_statistics(separated_dataset):
    stats = stat_map_dataset(separated_dataset)
    perfect = NodeState(1, separated_dataset, stats, param_map(stats))
    flipped = NodeState(2, separated_dataset, stats, flipped_params(separated_dataset.schema))
    metrics = evaluate_round(3, [perfect, flipped], separated_dataset, separated_dataset, (0.0, 0.25))

    assert metrics.t == 3
    assert metrics.train_err_mean == 0.5
    assert metrics.train_err_std == 0.5
    assert metrics.test_gap == 0.25
    assert metrics.train_gap == 0.5
    assert metrics.soft_train_mean == pytest.approx(0.5)
    assert metrics.node_test_err == [0.0, 1.0]


def test_round_evaluator_rejects_empty_data(separated_dataset):
    empty = separated_dataset.subset(np.array([], dtype=np.int64))
    with pytest.raises(EmptyDatasetError):
        RoundEvaluator(separated_dataset, empty, 0.0, 0.0)


def test_metrics_csv(tmp_path, separated_dataset):
    stats = stat_map_dataset(separated_dataset)
    state = NodeState(1, separated_dataset, stats, param_map(stats))
    evaluator = RoundEvaluator(separated_dataset, separated_dataset, 0.0, 0.0)
    metrics = [evaluator(t, [state]) for t in (1, 2)]
    assert list(metrics_frame(metrics).columns) == METRIC_COLUMNS

    path = tmp_path / "metrics.csv"
    write_metrics_csv(metrics, path)
    frame = pd.read_csv(path)
    assert frame["t"].tolist() == [1, 2]
    assert frame["test_gap"].tolist() == [0.0, 0.0]


def test_ml_baseline(blobs):
    result = run_baseline("ml", blobs)
    assert len(result.trace) == 1
    assert result.train_err <= 0.02
    with pytest.raises(CalibrationError):
        run_baseline("ml", blobs, smoothing=-1.0)


def test_ml_baseline_matches_counts_without_smoothing(separated_dataset):
    result = run_baseline("ml", separated_dataset, smoothing=0.0)
    expected = param_map(stat_map_dataset(separated_dataset))
    assert result.params.max_relative_deviation(expected) == 0.0


def test_rc_baseline_trace(blobs):
    result = run_baseline("rc", blobs, lr=0.1, t_max=8)
    assert len(result.trace) == 9
    assert result.params is result.trace.final.params
    assert result.train_err == result.trace.final.err01
    assert result.trace.records[0].stats.ess == pytest.approx(blobs.m)


def test_ml_baseline_on_counts_only_data(discrete_schema):
    dataset = Dataset(discrete_schema, np.array([[1.0], [1.0], [1.0], [2.0], [2.0], [1.0]]), np.array([1, 1, 1, 1, 2, 2]))
    plain = run_baseline("ml", dataset, smoothing=0.0).params
    np.testing.assert_allclose(plain.class_probs, [4 / 6, 2 / 6], rtol=1e-12)
    np.testing.assert_allclose(plain.categorical(0), [[3 / 4, 1 / 4], [1 / 2, 1 / 2]], rtol=1e-12)

    smoothed = run_baseline("ml", dataset).params
    np.testing.assert_allclose(smoothed.class_probs, [4.5 / 7, 2.5 / 7], rtol=1e-12)
    np.testing.assert_allclose(smoothed.categorical(0), [[3.25 / 4.5, 1.25 / 4.5], [0.5, 0.5]], rtol=1e-12)


def test_rounds_to_converge():
    frame = pd.DataFrame({"t": [1, 2, 3, 4], "test_gap": [0.2, 0.05, 0.004, 0.02], "train_gap": [0.3] * 4})
    assert rounds_to_converge(frame) == 3
    assert rounds_to_converge(frame, threshold=0.001) is None
    assert rounds_to_converge(frame, column="train_gap", threshold=0.5) == 1
    assert CONVERGENCE_GAP == 0.01
