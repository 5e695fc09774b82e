"""CRC on a full graph with closed neighborhoods and one LRC iteration reproduces centralized RC.

With ``m0 = m / (lr · n)`` the average every node computes in round ``t`` is the centralized RC
iterate ``t - 1`` scaled by ``m0 / m``, so the two classifiers coincide round by round. The
identity holds for any partition of the pooled data, label- and feature-skewed ones included.
"""

import numpy as np
import pytest

from crcsim.calibration import rc
from crcsim.model import param_map, uniform_init
from crcsim.network import RewireSchedule, TopologySpec
from crcsim.partition import PartitionMode, split, split_iid
from crcsim.sim import CRCSettings, m0_heuristic, run_crc

T_MAX = 20
M_V = 40
TOLERANCE = 1e-9


def run_both(dataset, plan, lr):
    local = plan.local_datasets(dataset)
    global_train = dataset.subset(plan.global_sample)
    n, m = plan.n, global_train.m
    m0 = m0_heuristic(m, lr, n)

    settings = CRCSettings(t_max=T_MAX, iterations=1, m0=m0)
    schedule = RewireSchedule(topology=TopologySpec.parse("full"))
    result = run_crc(settings, local, schedule, keep_aggregates=True)
    trace = rc(global_train, lr, T_MAX, uniform_init(dataset.schema, m))
    return result, trace, m / m0


def check_equivalence(dataset, plan, lr):
    result, trace, scale = run_both(dataset, plan, lr)
    for t in range(1, T_MAX + 1):
        reference = trace.records[t - 1]
        norm = np.max(np.abs(reference.stats.values))
        for aggregate in result.aggregated[t - 1]:
            assert param_map(aggregate).max_relative_deviation(reference.params) < TOLERANCE
            scaled = scale * aggregate
            assert np.max(np.abs(scaled.values - reference.stats.values)) / norm < TOLERANCE


@pytest.mark.parametrize("mode", list(PartitionMode))
@pytest.mark.parametrize("n", [2, 5, 10])
@pytest.mark.parametrize("lr", [0.05, 0.2])
def test_full_graph_crc_matches_rc(mixed_dataset, mode, n, lr):
    plan = split(mixed_dataset, mode, n, M_V, np.random.default_rng(n))
    check_equivalence(mixed_dataset, plan, lr)


def test_single_node_follows_rc_trajectory(mixed_dataset):
    plan = split_iid(mixed_dataset, 1, M_V, np.random.default_rng(3))
    check_equivalence(mixed_dataset, plan, 0.1)
    result, trace, _ = run_both(mixed_dataset, plan, 0.1)
    assert result.states[0].params.max_relative_deviation(trace.final.params) < TOLERANCE


def test_nodes_agree_on_a_full_graph(mixed_dataset):
    plan = split_iid(mixed_dataset, 4, M_V, np.random.default_rng(2))
    local = plan.local_datasets(mixed_dataset)
    settings = CRCSettings(t_max=3, m0=m0_heuristic(4 * M_V, 0.1, 4))
    result = run_crc(settings, local, RewireSchedule(topology=TopologySpec.parse("full")), keep_aggregates=True)
    for aggregates in result.aggregated:
        for aggregate in aggregates[1:]:
            assert aggregate.allclose(aggregates[0], rtol=1e-12)
