from dataclasses import dataclass, field

import numpy as np

from crcsim.exceptions import GraphError
from crcsim.network.generators import TopologySpec
from crcsim.network.graph import Graph
from crcsim.utils.logging import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True)
class RewireSchedule:
    """When and how the communication graph is regenerated.

    Attributes:
        period: Rewire every ``period`` rounds; ``None`` keeps the graph fixed
        topology: Base topology regenerated at each rewire
        seed: Seed of the graph stream (initial graph and every rewire)
    """

    period: int | None = None
    topology: TopologySpec = field(default_factory=TopologySpec)
    seed: int | None = None

    def __post_init__(self) -> None:
        if self.period is not None and self.period < 1:
            raise GraphError(f"Rewire period must be a positive integer, got {self.period}")

    def rng(self) -> np.random.Generator:
        return np.random.default_rng(self.seed)

    def initial_graph(self, n: int, rng: np.random.Generator) -> Graph:
        return self.topology.build(n, rng)

    def is_rewire_round(self, t: int) -> bool:
        return self.period is not None and t % self.period == 0


def rewire(schedule: RewireSchedule, t: int, current: Graph, rng: np.random.Generator) -> Graph:
    """Graph for round ``t``: a fresh draw of the base topology on rewire rounds, else ``current``."""
    if t < 1:
        raise GraphError(f"Rounds start at 1, got t={t}")
    if not schedule.is_rewire_round(t):
        return current
    graph = schedule.topology.build(current.n, rng)
    logger.debug("graph_rewired", t=t, edges=graph.num_edges)
    return graph
