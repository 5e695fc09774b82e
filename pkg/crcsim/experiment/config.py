"""Experiment configuration: a pydantic model read from flat ``key = value`` files.

Example file::

    # tree with 80 extra edges, label drift
    data = data/blobs.csv
    topology = tree+80
    partition = drift_y
    delta = inf
    iter = 1
"""

from pathlib import Path
from typing import Any, Literal

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from crcsim.exceptions import ConfigError, UnknownConfigKeyError
from crcsim.network.generators import TopologyKind, TopologySpec
from crcsim.network.graph import NeighborhoodMode
from crcsim.partition.plan import PartitionMode
from crcsim.sim.crc import m0_heuristic
from crcsim.utils.logging import get_logger

logger = get_logger(__name__)

INFINITE_TOKENS = {"inf", "infinite", "infinity", "∞"}
NONE_TOKEN = "none"


class ExperimentConfig(BaseModel):
    """All settings of one experiment; defaults follow the standard protocol (n = m_v = 50, 64 rounds)."""

    model_config = ConfigDict(populate_by_name=True, extra="forbid", frozen=True)

    data: str | None = None
    label_column: str = "-1"
    n: int = Field(50, ge=1)
    m_v: int = Field(50, ge=1)
    t_max: int = Field(64, ge=1)
    iterations: int = Field(1, ge=1, alias="iter")
    lr: float = Field(0.05, gt=0)
    m0: float | Literal["heuristic"] = "heuristic"
    topology: str = "tree"
    neighborhood: NeighborhoodMode = NeighborhoodMode.CLOSED
    partition: PartitionMode = PartitionMode.IID
    period: int | None = Field(None, ge=1, alias="delta")
    train_size: int | None = Field(None, ge=1)
    test_size: int | None = Field(None, ge=1)
    seed: int = 0
    repetitions: int = Field(5, ge=1)
    workers: int = Field(1, ge=1)
    classifier: str = "nb"
    ml_smoothing: float = Field(1.0, ge=0)
    rc_init_ess: float | None = Field(None, gt=0)
    m_total: int | None = Field(None, ge=1)

    @field_validator("period", mode="before")
    @classmethod
    def parse_infinite_period(cls, value: Any) -> Any:
        if isinstance(value, str) and value.strip().lower() in INFINITE_TOKENS:
            return None
        if isinstance(value, float) and value == float("inf"):
            return None
        return value

    @field_validator("topology")
    @classmethod
    def normalize_topology(cls, value: str) -> str:
        return str(TopologySpec.parse(value))

    @field_validator("m0")
    @classmethod
    def check_m0(cls, value: float | str) -> float | str:
        if isinstance(value, float) and not value > 0:
            raise ValueError("m0 must be positive")
        return value

    @model_validator(mode="after")
    def check_topology_fits(self) -> "ExperimentConfig":
        spec = self.topology_spec
        if spec.kind is not TopologyKind.FULL and self.n < 2:
            raise ValueError(f"topology '{self.topology}' needs n >= 2")
        return self

    @property
    def topology_spec(self) -> TopologySpec:
        return TopologySpec.parse(self.topology)

    @property
    def global_size(self) -> int:
        return self.n * self.m_v

    def resolved_m0(self) -> float:
        """Explicit ``m0``, or ``m / (lr · n)`` over the pooled sample of ``n · m_v`` instances."""
        if self.m0 == "heuristic":
            return m0_heuristic(self.global_size, self.lr, self.n)
        return float(self.m0)

    def resolved_split(self, m: int) -> tuple[int, int]:
        """Train and test sizes for a dataset of ``m`` instances."""
        train = self.train_size if self.train_size is not None else self.global_size
        test = self.test_size if self.test_size is not None else m - train
        return train, test

    def to_text(self) -> str:
        """Serialize as ``key = value`` lines that :func:`parse_config` reads back to an equal config."""
        lines = []
        for name, field in type(self).model_fields.items():
            key = field.alias or name
            value = getattr(self, name)
            if value is None:
                token = "inf" if name == "period" else NONE_TOKEN
            elif hasattr(value, "value"):
                token = str(value.value)
            elif isinstance(value, float):
                token = repr(value)
            else:
                token = str(value)
            lines.append(f"{key} = {token}")
        return "\n".join(lines) + "\n"

    def with_updates(self, **updates: Any) -> "ExperimentConfig":
        """Validated copy with the given fields replaced."""
        values = self.model_dump(by_alias=True)
        for name, value in updates.items():
            values[_KEYS.get(name, name)] = value
        return _validate(values, {})


def _config_keys() -> dict[str, str]:
    """Accepted key → canonical key (the alias when a field has one)."""
    keys = {}
    for name, field in ExperimentConfig.model_fields.items():
        canonical = field.alias or name
        keys[name] = canonical
        keys[canonical] = canonical
    return keys


_KEYS = _config_keys()


def _parse_line(raw: str, number: int | None, values: dict[str, Any], lines: dict[str, int]) -> None:
    line = raw.split("#", 1)[0].strip()
    if not line:
        return
    key, sep, value = line.partition("=")
    key = key.strip()
    if not sep or not key:
        where = f" (line {number})" if number is not None else ""
        raise ConfigError(f"Expected 'key = value'{where}: {raw.strip()!r}")
    if key not in _KEYS:
        raise UnknownConfigKeyError(key, number)
    value = value.strip()
    canonical = _KEYS[key]
    values[canonical] = None if value.lower() == NONE_TOKEN else value
    if number is not None:
        lines[canonical] = number


def _validate(values: dict[str, Any], lines: dict[str, int]) -> ExperimentConfig:
    try:
        return ExperimentConfig.model_validate(values)
    except ValidationError as e:
        problems = []
        for error in e.errors():
            key = ".".join(str(p) for p in error["loc"]) or "config"
            where = f" (line {lines[key]})" if key in lines else ""
            problems.append(f"{key}{where}: {error['msg']}")
        raise ConfigError("Invalid configuration: " + "; ".join(problems)) from None


def parse_config_text(text: str, overrides: list[str] | None = None) -> ExperimentConfig:
    values: dict[str, Any] = {}
    lines: dict[str, int] = {}
    for number, raw in enumerate(text.splitlines(), start=1):
        _parse_line(raw, number, values, lines)
    for override in overrides or []:
        _parse_line(override, None, values, lines)
        lines.pop(_KEYS.get(override.partition("=")[0].strip(), ""), None)
    return _validate(values, lines)


def parse_config(path: str | Path | None = None, overrides: list[str] | None = None) -> ExperimentConfig:
    """Read a config file (optional) and apply ``key=value`` overrides on top.

    Raises:
        UnknownConfigKeyError: A key that is not a config field
        ConfigError: Malformed line, missing file, type mismatch or violated invariant
    """
    text = ""
    if path is not None:
        if not Path(path).is_file():
            raise ConfigError(f"Config file not found: {path}")
        text = Path(path).read_text(encoding="utf-8")
    config = parse_config_text(text, overrides)
    logger.debug("config_parsed", path=str(path) if path else None, overrides=len(overrides or []))
    return config
