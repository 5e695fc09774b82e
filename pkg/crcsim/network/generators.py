"""Topology generators: random trees, chains, full graphs and edge augmentation."""

import re
from dataclasses import dataclass
from enum import Enum

import networkx as nx
import numpy as np

from crcsim.exceptions import EdgeCapacityError, GraphError, InvalidTopologyError
from crcsim.network.graph import Edge, Graph
from crcsim.utils.logging import get_logger

logger = get_logger(__name__)


def random_tree(n: int, rng: np.random.Generator) -> Graph:
    """Uniformly random labeled tree, decoded from a random Prüfer sequence."""
    if n < 2:
        raise GraphError(f"A random tree needs at least 2 nodes, got {n}")
    sequence = rng.integers(0, n, size=n - 2).tolist()
    tree = nx.from_prufer_sequence(sequence)
    return Graph.from_edges(n, [(u + 1, v + 1) for u, v in tree.edges()])


def chain(n: int) -> Graph:
    if n < 2:
        raise GraphError(f"A chain needs at least 2 nodes, got {n}")
    return Graph.from_edges(n, [(i, i + 1) for i in range(1, n)])


def full_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)])


def absent_edges(graph: Graph) -> list[Edge]:
    n = graph.n
    return [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1) if (u, v) not in graph.edges]


def add_random_edges(graph: Graph, k: int, rng: np.random.Generator) -> Graph:
    """Add ``k`` distinct absent edges chosen uniformly at random."""
    if k == 0:
        return graph
    candidates = absent_edges(graph)
    if k < 0 or k > len(candidates):
        raise EdgeCapacityError(k, len(candidates))
    chosen = rng.choice(len(candidates), size=k, replace=False)
    return Graph(n=graph.n, edges=graph.edges | frozenset(candidates[i] for i in chosen))


class TopologyKind(str, Enum):
    TREE = "tree"
    CHAIN = "chain"
    FULL = "full"


_SPEC_PATTERN = re.compile(r"^(tree|chain|full)(?:\+(\d+))?$")


@dataclass(frozen=True)
class TopologySpec:
    """Base topology plus a number of extra random edges, written as ``tree+80``."""

    kind: TopologyKind = TopologyKind.TREE
    extra_edges: int = 0

    @classmethod
    def parse(cls, text: str) -> "TopologySpec":
        match = _SPEC_PATTERN.match(text.strip().lower())
        if match is None:
            raise InvalidTopologyError(text)
        kind = TopologyKind(match.group(1))
        extra = int(match.group(2) or 0)
        if kind is TopologyKind.FULL and extra:
            raise InvalidTopologyError(text)
        return cls(kind=kind, extra_edges=extra)

    def __str__(self) -> str:
        return f"{self.kind.value}+{self.extra_edges}" if self.extra_edges else self.kind.value

    @property
    def is_random(self) -> bool:
        return self.kind is TopologyKind.TREE or self.extra_edges > 0

    def build(self, n: int, rng: np.random.Generator) -> Graph:
        if self.kind is TopologyKind.TREE:
            graph = random_tree(n, rng)
        elif self.kind is TopologyKind.CHAIN:
            graph = chain(n)
        else:
            graph = full_graph(n)
        graph = add_random_edges(graph, self.extra_edges, rng)
        logger.debug("graph_built", topology=str(self), n=n, edges=graph.num_edges, sparseness=graph.sparseness)
        return graph
