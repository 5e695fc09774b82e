"""Communication graphs, topology generators and rewiring."""

from crcsim.network.generators import (
    TopologyKind,
    TopologySpec,
    absent_edges,
    add_random_edges,
    chain,
    full_graph,
    random_tree,
)
from crcsim.network.graph import Edge, Graph, NeighborhoodMode
from crcsim.network.rewire import RewireSchedule, rewire

__all__ = [
    "Edge",
    "Graph",
    "NeighborhoodMode",
    "RewireSchedule",
    "TopologyKind",
    "TopologySpec",
    "absent_edges",
    "add_random_edges",
    "chain",
    "full_graph",
    "random_tree",
    "rewire",
]
