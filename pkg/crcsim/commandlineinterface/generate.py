"""Generator commands: communication graphs and synthetic datasets."""

from enum import Enum

import numpy as np
from rich.console import Console

from crcsim.commandlineinterface.experiment import guarded
from crcsim.data.csv_io import write_csv
from crcsim.data.synthetic import make_blobs, make_categorical_mixture, make_mixed
from crcsim.network.generators import TopologySpec
from crcsim.utils.logging import get_logger, setup_logging

console = Console()
logger = get_logger(__name__)


class DataKind(str, Enum):
    BLOBS = "blobs"
    CATEGORICAL = "categorical"
    MIXED = "mixed"


def start_gengraph(
    n: int, topology: str, seed: int | None, output: str | None, log_level: str = "INFO", pretty: bool = True
) -> None:
    """Emit an edge list for one draw of ``topology`` on ``n`` nodes."""
    setup_logging(level=log_level, pretty=pretty)

    def action() -> None:
        graph = TopologySpec.parse(topology).build(n, np.random.default_rng(seed))
        if output is None:
            print(graph.to_edge_list(), end="")
            return
        graph.write_edge_list(output)
        logger.info("graph_written", path=output, n=n, edges=graph.num_edges, sparseness=graph.sparseness)
        console.print(f"Wrote {graph.num_edges} edges (sparseness {graph.sparseness:.4f}) to {output}")

    guarded(action)


def start_gendata(
    kind: DataKind,
    m: int,
    output: str,
    d: int = 2,
    r: int = 2,
    separation: float = 4.0,
    cardinality: int = 3,
    seed: int | None = None,
    log_level: str = "INFO",
    pretty: bool = True,
) -> None:
    """Write a synthetic dataset as CSV."""
    setup_logging(level=log_level, pretty=pretty)

    def action() -> None:
        rng = np.random.default_rng(seed)
        if kind is DataKind.BLOBS:
            dataset = make_blobs(m, d=d, r=r, separation=separation, rng=rng)
        elif kind is DataKind.CATEGORICAL:
            dataset = make_categorical_mixture(m, d=d, r=r, cardinality=cardinality, rng=rng)
        else:
            dataset = make_mixed(m, continuous=d, r=r, cardinality=cardinality, separation=separation, rng=rng)
        write_csv(dataset, output)
        logger.info("dataset_written", path=output, kind=kind.value, m=m)
        console.print(f"Wrote {m} {kind.value} instances to {output}")

    guarded(action)
