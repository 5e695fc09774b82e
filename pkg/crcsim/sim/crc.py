"""Collaborative risk-based calibration (CRC) over a communication graph.

Each round every node averages the statistics its neighborhood published in the previous
round and runs local calibration on its own data. Rounds are synchronous: all reads of round
``t`` see round ``t - 1`` state, so node updates within a round are independent and may run on
a thread pool without changing the result.
"""

import time
from collections.abc import Callable, Sequence
from concurrent.futures import Executor, ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import NamedTuple

from crcsim.calibration.family import NAIVE_BAYES, ClassifierFamily
from crcsim.calibration.rc import lrc
from crcsim.data.dataset import Dataset
from crcsim.exceptions import CalibrationError, EmptyDatasetError, NodeCountMismatchError, SimulationError
from crcsim.model.params import NBParams
from crcsim.model.stats import StatsVector, average
from crcsim.network.graph import Graph, NeighborhoodMode
from crcsim.network.rewire import RewireSchedule, rewire
from crcsim.sim.metrics import RoundMetrics
from crcsim.utils.logging import get_logger

logger = get_logger(__name__)

RoundCallback = Callable[[int, "list[NodeState]"], RoundMetrics]


@dataclass(frozen=True)
class NodeState:
    v: int
    dataset: Dataset = field(repr=False)
    stats: StatsVector = field(repr=False)
    params: NBParams = field(repr=False)


@dataclass(frozen=True)
class CRCSettings:
    """Protocol parameters of one CRC run.

    Attributes:
        t_max: Communication rounds
        iterations: LRC iterations per round
        m0: Equivalent sample size of every node's uniform initialization
        neighborhood: Whether a node's own statistics enter its average
        workers: Threads updating nodes within a round
    """

    t_max: int = 64
    iterations: int = 1
    m0: float = 1000.0
    neighborhood: NeighborhoodMode = NeighborhoodMode.CLOSED
    workers: int = 1

    def __post_init__(self) -> None:
        if self.t_max < 1:
            raise CalibrationError(f"t_max must be at least 1, got {self.t_max}")
        if self.iterations < 1:
            raise CalibrationError(f"iter must be at least 1, got {self.iterations}")
        if not self.m0 > 0:
            raise CalibrationError(f"m0 must be positive, got {self.m0}")
        if self.workers < 1:
            raise SimulationError(f"workers must be at least 1, got {self.workers}")


class CRCResult(NamedTuple):
    metrics: list[RoundMetrics]
    states: list[NodeState]
    # aggregated[t - 1][v - 1] is the average node v computed in round t
    aggregated: list[list[StatsVector]]


def m0_heuristic(m: int, lr: float, n: int) -> float:
    """Equivalent sample size under which CRC on a full graph reproduces RC with rate ``lr``."""
    if m < 1 or n < 1 or not lr > 0:
        raise CalibrationError(f"m0 heuristic needs m, n >= 1 and lr > 0 (got m={m}, lr={lr}, n={n})")
    return m / (lr * n)


def aggregation_neighbors(graph: Graph, v: int, mode: NeighborhoodMode) -> tuple[int, ...]:
    """Nodes whose statistics node ``v`` averages; an isolated node in open mode keeps its own."""
    neighbors = graph.neighbors(v, mode)
    return neighbors if neighbors else (v,)


def crc_round(
    previous: list[NodeState],
    graph: Graph,
    settings: CRCSettings,
    *,
    family: ClassifierFamily = NAIVE_BAYES,
    executor: Executor | None = None,
    order: Sequence[int] | None = None,
) -> tuple[list[NodeState], list[StatsVector]]:
    """One synchronous round: aggregate round ``t - 1`` statistics, then run LRC at every node.

    Args:
        previous: Node states after round ``t - 1``, indexed by ``v - 1``
        graph: Communication graph of round ``t``
        settings: Protocol parameters
        family: Classifier family
        executor: Runs node updates concurrently when given
        order: Order in which node updates are submitted; results do not depend on it

    Returns:
        New node states and the aggregated statistics, both indexed by ``v - 1``
    """
    published = [state.stats for state in previous]

    def update(v: int) -> tuple[NodeState, StatsVector]:
        aggregate = average([published[u - 1] for u in aggregation_neighbors(graph, v, settings.neighborhood)])
        state = previous[v - 1]
        params, stats = lrc(aggregate, state.dataset, settings.iterations, family=family)
        return NodeState(v=v, dataset=state.dataset, stats=stats, params=params), aggregate

    nodes = list(order) if order is not None else list(range(1, len(previous) + 1))
    results = list(executor.map(update, nodes)) if executor is not None else [update(v) for v in nodes]

    states: list[NodeState | None] = [None] * len(previous)
    aggregates: list[StatsVector | None] = [None] * len(previous)
    for v, (state, aggregate) in zip(nodes, results, strict=True):
        states[v - 1], aggregates[v - 1] = state, aggregate
    if any(s is None for s in states):
        raise SimulationError("Round order did not cover every node")
    return [s for s in states if s is not None], [a for a in aggregates if a is not None]


def run_crc(
    settings: CRCSettings,
    local_datasets: list[Dataset],
    schedule: RewireSchedule,
    *,
    evaluator: RoundCallback | None = None,
    graph: Graph | None = None,
    family: ClassifierFamily = NAIVE_BAYES,
    keep_aggregates: bool = False,
) -> CRCResult:
    """Run CRC for ``settings.t_max`` rounds.

    Args:
        settings: Protocol parameters
        local_datasets: One dataset per node, node ``v`` at index ``v - 1``
        schedule: Base topology, rewire period and seed of the graph stream
        evaluator: Called after every round to produce its metrics
        graph: Initial graph; drawn from the schedule's stream when omitted
        family: Classifier family
        keep_aggregates: Retain every node's aggregated statistics of every round

    Raises:
        NodeCountMismatchError: ``graph`` has a different node count than ``local_datasets``
        EmptyDatasetError: A node has no local data
    """
    n = len(local_datasets)
    if n == 0:
        raise SimulationError("CRC needs at least one node")
    for v, dataset in enumerate(local_datasets, start=1):
        if dataset.m == 0:
            raise EmptyDatasetError(f"node {v} local calibration")
    schema = local_datasets[0].schema
    if any(dataset.schema != schema for dataset in local_datasets):
        raise SimulationError("Local datasets do not share one schema")

    graph_rng = schedule.rng()
    current = graph if graph is not None else schedule.initial_graph(n, graph_rng)
    if current.n != n:
        raise NodeCountMismatchError(n, current.n)

    init = family.project(family.uniform_init(schema, settings.m0))
    init_params = family.param_map(init)
    states = [NodeState(v=v, dataset=d, stats=init, params=init_params) for v, d in enumerate(local_datasets, start=1)]

    metrics: list[RoundMetrics] = []
    aggregated: list[list[StatsVector]] = []
    t_start = time.time()
    executor = ThreadPoolExecutor(max_workers=settings.workers) if settings.workers > 1 else None
    try:
        for t in range(1, settings.t_max + 1):
            current = rewire(schedule, t, current, graph_rng)
            states, aggregates = crc_round(states, current, settings, family=family, executor=executor)
            if keep_aggregates:
                aggregated.append(aggregates)
            if evaluator is not None:
                round_metrics = evaluator(t, states)
                metrics.append(round_metrics)
                logger.info(
                    "crc_round_completed",
                    t=t,
                    train_err_mean=round_metrics.train_err_mean,
                    test_err_mean=round_metrics.test_err_mean,
                    test_gap=round_metrics.test_gap,
                )
            else:
                logger.debug("crc_round_completed", t=t)
    finally:
        if executor is not None:
            executor.shutdown(wait=True)

    logger.info("crc_completed", n=n, t_max=settings.t_max, m0=settings.m0, seconds=round(time.time() - t_start, 3))
    return CRCResult(metrics=metrics, states=states, aggregated=aggregated)
