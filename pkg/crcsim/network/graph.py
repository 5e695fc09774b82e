"""Undirected communication graphs over nodes ``1..n``."""

from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from pathlib import Path

import networkx as nx

from crcsim.exceptions import GraphError, InvalidNodeError

Edge = tuple[int, int]


class NeighborhoodMode(str, Enum):
    OPEN = "open"
    CLOSED = "closed"


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph; edges are stored as ``(u, v)`` pairs with ``u < v``."""

    n: int
    edges: frozenset[Edge]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise GraphError(f"A graph needs at least one node, got n={self.n}")
        for u, v in self.edges:
            if not u < v:
                raise GraphError(f"Edge ({u}, {v}) is not normalized as u < v (self-loops are not allowed)")
            if u < 1 or v > self.n:
                raise InvalidNodeError(u if u < 1 else v, self.n)

    @classmethod
    def from_edges(cls, n: int, pairs: list[Edge] | set[Edge]) -> "Graph":
        """Build a graph from unordered pairs, rejecting self-loops."""
        edges = set()
        for u, v in pairs:
            if u == v:
                raise GraphError(f"Self-loop on node {u}")
            edges.add((min(u, v), max(u, v)))
        return cls(n=n, edges=frozenset(edges))

    @cached_property
    def _adjacency(self) -> tuple[tuple[int, ...], ...]:
        adjacent: list[list[int]] = [[] for _ in range(self.n + 1)]
        for u, v in self.edges:
            adjacent[u].append(v)
            adjacent[v].append(u)
        return tuple(tuple(sorted(a)) for a in adjacent)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @property
    def sparseness(self) -> float:
        """Fraction of the ``n(n-1)/2`` possible edges that are present."""
        possible = self.n * (self.n - 1) // 2
        return len(self.edges) / possible if possible else 1.0

    def neighbors(self, v: int, mode: NeighborhoodMode | str = NeighborhoodMode.CLOSED) -> tuple[int, ...]:
        """Sorted neighbor ids of ``v``; the closed neighborhood also contains ``v``."""
        if not 1 <= v <= self.n:
            raise InvalidNodeError(v, self.n)
        adjacent = self._adjacency[v]
        if NeighborhoodMode(mode) is NeighborhoodMode.OPEN:
            return adjacent
        return tuple(sorted((*adjacent, v)))

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(1, self.n + 1))
        graph.add_edges_from(sorted(self.edges))
        return graph

    def is_connected(self) -> bool:
        return bool(nx.is_connected(self.to_networkx()))

    def diameter(self) -> int:
        return int(nx.diameter(self.to_networkx()))

    def to_edge_list(self) -> str:
        lines = [f"# n = {self.n}", *(f"{u} {v}" for u, v in sorted(self.edges))]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_edge_list(cls, text: str) -> "Graph":
        """Parse ``u v`` lines; ``n`` comes from a ``# n = <count>`` header or the largest id."""
        n: int | None = None
        pairs: list[Edge] = []
        for number, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            if not line:
                continue
            if line.startswith("#"):
                key, sep, value = line.lstrip("#").partition("=")
                if sep and key.strip() == "n":
                    n = int(value)
                continue
            tokens = line.split()
            if len(tokens) != 2:
                raise GraphError(f"Edge list line {number} is not 'u v': {raw!r}")
            try:
                pairs.append((int(tokens[0]), int(tokens[1])))
            except ValueError:
                raise GraphError(f"Edge list line {number} has non-integer node ids: {raw!r}") from None
        if n is None:
            n = max((max(p) for p in pairs), default=1)
        return cls.from_edges(n, pairs)

    def write_edge_list(self, path: str | Path) -> None:
        Path(path).parent.mkdir(parents=True, exist_ok=True)
        Path(path).write_text(self.to_edge_list(), encoding="utf-8")

    @classmethod
    def read_edge_list(cls, path: str | Path) -> "Graph":
        return cls.from_edge_list(Path(path).read_text(encoding="utf-8"))
