from enum import Enum
from pathlib import Path

import numpy as np
import numpy.typing as npt
import pandas as pd
from pydantic import BaseModel, model_validator

from crcsim.data.dataset import Dataset
from crcsim.exceptions import PartitionError


class PartitionMode(str, Enum):
    IID = "iid"
    DRIFT_X = "drift_x"
    DRIFT_Y = "drift_y"
    DRIFT_XY = "drift_xy"


class PartitionPlan(BaseModel):
    """Assignment of global instance positions to nodes.

    ``assignment[v - 1]`` lists the 0-based positions (into the partitioned dataset) that node
    ``v`` receives. Blocks are disjoint and each holds exactly ``m_v`` positions.
    """

    mode: PartitionMode
    n: int
    m_v: int
    assignment: list[list[int]]

    @model_validator(mode="after")
    def check_blocks(self) -> "PartitionPlan":
        if len(self.assignment) != self.n:
            raise PartitionError(f"Plan has {len(self.assignment)} blocks for {self.n} nodes")
        for v, block in enumerate(self.assignment, start=1):
            if len(block) != self.m_v:
                raise PartitionError(f"Node {v} received {len(block)} instances, expected {self.m_v}")
        flat = [i for block in self.assignment for i in block]
        if len(set(flat)) != len(flat):
            raise PartitionError("Partition blocks overlap")
        return self

    @property
    def global_sample(self) -> npt.NDArray[np.int64]:
        """All assigned positions, node by node."""
        return np.array([i for block in self.assignment for i in block], dtype=np.int64)

    def local_datasets(self, dataset: Dataset) -> list[Dataset]:
        return [dataset.subset(block) for block in self.assignment]

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            [(v, i) for v, block in enumerate(self.assignment, start=1) for i in block],
            columns=["node", "global_index"],
        )

    def to_csv(self, path: str | Path) -> None:
        Path(path).parent.mkdir(parents=True, exist_ok=True)
        self.to_frame().to_csv(path, index=False)
