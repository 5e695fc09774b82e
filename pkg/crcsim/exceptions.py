class CRCSimError(Exception):
    """Base exception for all crcsim errors."""

    pass


class DataError(CRCSimError):
    """Base exception for dataset ingestion and validation errors."""

    pass


class CSVFormatError(DataError):
    """Raised when a CSV file cannot be parsed into a rectangular table."""

    def __init__(self, path: str, reason: str, row: int | None = None, column: str | None = None):
        self.path = path
        self.row = row
        self.column = column
        where = ""
        if row is not None:
            where += f" at row {row}"
        if column is not None:
            where += f", column '{column}'" if row is not None else f" in column '{column}'"
        super().__init__(f"{path}{where}: {reason}")


class SchemaError(DataError):
    """Raised when a feature schema cannot be inferred or is violated."""

    pass


class DatasetValidationError(DataError):
    """Raised when dataset values fall outside their declared support."""

    pass


class EmptyDatasetError(DataError):
    """Raised when an operation needs at least one instance."""

    def __init__(self, operation: str):
        super().__init__(f"{operation} requires a non-empty dataset")


class SplitSizeError(DataError):
    """Raised when requested split sizes exceed the available instances."""

    def __init__(self, requested: int, available: int):
        self.requested = requested
        self.available = available
        super().__init__(f"Requested {requested} instances but only {available} are available")


class StatisticsError(CRCSimError):
    """Raised when a statistics vector is malformed or was not projected."""

    pass


class PartitionError(CRCSimError):
    """Base exception for data partitioning errors."""

    pass


class InsufficientDataError(PartitionError):
    def __init__(self, n: int, m_v: int, m: int):
        self.n = n
        self.m_v = m_v
        self.m = m
        super().__init__(f"Cannot give {n} nodes {m_v} instances each: only {m} instances available")


class DegenerateCovarianceError(PartitionError):
    """Raised when all instances are identical and no principal direction exists."""

    def __init__(self) -> None:
        super().__init__("Covariance is zero: all instances are identical")


class GraphError(CRCSimError):
    """Base exception for communication graph errors."""

    pass


class InvalidNodeError(GraphError):
    def __init__(self, node: int, n: int):
        self.node = node
        self.n = n
        super().__init__(f"Node {node} is out of range 1..{n}")


class EdgeCapacityError(GraphError):
    def __init__(self, requested: int, absent: int):
        super().__init__(f"Cannot add {requested} edges: only {absent} absent edges remain")


class ConfigError(CRCSimError):
    """Raised when an experiment configuration is invalid."""

    pass


class UnknownConfigKeyError(ConfigError):
    def __init__(self, key: str, line: int | None = None):
        self.key = key
        self.line = line
        location = f" (line {line})" if line is not None else ""
        super().__init__(f"Unknown configuration key '{key}'{location}")


class InvalidSweepAxisError(ConfigError):
    def __init__(self, axis: str, valid_axes: list[str]):
        super().__init__(f"Unknown sweep axis '{axis}'. Valid axes: {valid_axes}")


class SimulationError(CRCSimError):
    """Base exception for simulation errors."""

    pass


class NodeCountMismatchError(SimulationError):
    def __init__(self, datasets: int, nodes: int):
        super().__init__(f"Got {datasets} local datasets for a graph with {nodes} nodes")


class FamilyNotFoundError(CRCSimError):
    """Raised when a classifier family name is not registered."""

    def __init__(self, name: str, available: list[str]):
        super().__init__(f"Classifier family '{name}' not found. Available families: {available}")


class CalibrationError(CRCSimError):
    """Raised when calibration is asked for an invalid learning rate or iteration count."""

    pass


class InvalidTopologyError(GraphError, ValueError):
    """Raised when a topology spec such as ``tree+10`` cannot be parsed."""

    def __init__(self, spec: str):
        super().__init__(f"Invalid topology '{spec}'. Expected tree, chain, full or <tree|chain>+<k>")
