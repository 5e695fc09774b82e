"""Experiment driver: repetitions, baselines, output files and parameter sweeps.

Output layout under the output directory::

    config.txt               resolved configuration
    metrics_rep{k}.csv       per-round metrics of repetition k
    metrics_aggregate.csv    per-round metrics averaged across repetitions
    baselines.csv            ML and RC errors per repetition
    params_rep{k}.txt        final per-node parameters of repetition k
    partition_rep{k}.csv     node assignment of repetition k

A sweep writes one such directory per value, named ``{axis}={value}``, plus ``sweep_{axis}.csv``.
The ``train_size`` sweep trains only RC baselines and writes ``train_size_runs.csv`` (one row per
repetition and size) next to its summary.
"""

import os
import time
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import pandas as pd

from crcsim.calibration.family import ClassifierFamily, get_family
from crcsim.data.csv_io import infer_schema, load_csv
from crcsim.data.dataset import Dataset, train_test_split
from crcsim.exceptions import ConfigError, InvalidSweepAxisError
from crcsim.experiment.config import ExperimentConfig
from crcsim.model.dump import dump_params, write_dump
from crcsim.network.rewire import RewireSchedule
from crcsim.partition.plan import PartitionPlan
from crcsim.partition.splitters import split
from crcsim.sim.baseline import BaselineKind, BaselineResult, run_baseline
from crcsim.sim.crc import CRCResult, CRCSettings, run_crc
from crcsim.sim.metrics import METRIC_COLUMNS, RoundEvaluator, metrics_frame, rounds_to_converge
from crcsim.utils.logging import get_logger

logger = get_logger(__name__)

OUTPUT_DIR_ENV = "CRCSIM_OUTPUT_DIR"
DEFAULT_OUTPUT_DIR = "results"

SWEEP_AXES = ["m_v", "n", "topology", "partition", "iter", "delta", "fragmentation", "train_size"]
_AXIS_ALIASES = {"δ": "delta", "period": "delta", "iterations": "iter"}

BASELINE_COLUMNS = ["rep", "seed", "ml_train_err", "ml_test_err", "rc_train_err", "rc_test_err", "rc_best_t"]


def resolve_output_dir(output_dir: str | Path | None) -> Path:
    """Explicit directory, else ``$CRCSIM_OUTPUT_DIR``, else ``./results``."""
    return Path(output_dir or os.getenv(OUTPUT_DIR_ENV) or DEFAULT_OUTPUT_DIR)


def load_dataset(config: ExperimentConfig) -> Dataset:
    if config.data is None:
        raise ConfigError("No dataset configured: set 'data = <path to csv>'")
    _, dataset = infer_schema(load_csv(config.data, config.label_column))
    return dataset


@dataclass(frozen=True)
class RepetitionStreams:
    """Independent generators of one repetition, spawned from ``seed + k``."""

    seed: int
    split: np.random.Generator
    partition: np.random.Generator
    graph_seed: int

    @classmethod
    def spawn(cls, base_seed: int, k: int) -> "RepetitionStreams":
        seed = base_seed + k
        split_seq, partition_seq, graph_seq = np.random.SeedSequence(seed).spawn(3)
        return cls(
            seed=seed,
            split=np.random.default_rng(split_seq),
            partition=np.random.default_rng(partition_seq),
            graph_seed=int(graph_seq.generate_state(1)[0]),
        )


@dataclass(frozen=True)
class RepetitionResult:
    k: int
    seed: int
    plan: PartitionPlan
    rc: BaselineResult
    ml: BaselineResult
    rc_test_err: float
    ml_test_err: float
    crc: CRCResult | None = None

    def baseline_row(self) -> dict[str, float]:
        return {
            "rep": self.k,
            "seed": self.seed,
            "ml_train_err": self.ml.train_err,
            "ml_test_err": self.ml_test_err,
            "rc_train_err": self.rc.train_err,
            "rc_test_err": self.rc_test_err,
            "rc_best_t": self.rc.trace.best.t,
        }


@dataclass(frozen=True)
class ExperimentResult:
    config: ExperimentConfig
    output_dir: Path
    repetitions: list[RepetitionResult]
    aggregate: pd.DataFrame

    @property
    def baselines(self) -> pd.DataFrame:
        return pd.DataFrame([r.baseline_row() for r in self.repetitions], columns=BASELINE_COLUMNS)


def run_repetition(
    config: ExperimentConfig, dataset: Dataset, k: int, family: ClassifierFamily, *, with_crc: bool = True
) -> RepetitionResult:
    """Split, partition, train both baselines and (optionally) run CRC for repetition ``k``."""
    streams = RepetitionStreams.spawn(config.seed, k)
    train_size, test_size = config.resolved_split(dataset.m)
    train, test = train_test_split(dataset, train_size, test_size, streams.split)

    plan = split(train, config.partition, config.n, config.m_v, streams.partition)
    local_datasets = plan.local_datasets(train)
    global_train = train.subset(plan.global_sample)

    ml = run_baseline(BaselineKind.ML, global_train, smoothing=config.ml_smoothing, family=family)
    rc = run_baseline(
        BaselineKind.RC, global_train, lr=config.lr, t_max=config.t_max, init_ess=config.rc_init_ess, family=family
    )
    rc_test_err = family.evaluate(rc.params, test)[0]
    ml_test_err = family.evaluate(ml.params, test)[0]

    crc = None
    if with_crc:
        settings = CRCSettings(
            t_max=config.t_max,
            iterations=config.iterations,
            m0=config.resolved_m0(),
            neighborhood=config.neighborhood,
            workers=config.workers,
        )
        schedule = RewireSchedule(period=config.period, topology=config.topology_spec, seed=streams.graph_seed)
        evaluator = RoundEvaluator(global_train, test, rc.train_err, rc_test_err, family=family)
        crc = run_crc(settings, local_datasets, schedule, evaluator=evaluator, family=family)

    logger.info("repetition_completed", rep=k, seed=streams.seed, rc_test_err=rc_test_err, ml_test_err=ml_test_err)
    return RepetitionResult(
        k=k, seed=streams.seed, plan=plan, rc=rc, ml=ml, rc_test_err=rc_test_err, ml_test_err=ml_test_err, crc=crc
    )


def _write_repetition(result: RepetitionResult, output_dir: Path) -> None:
    k = result.k
    result.plan.to_csv(output_dir / f"partition_rep{k}.csv")
    if result.crc is None:
        return
    metrics_frame(result.crc.metrics).to_csv(output_dir / f"metrics_rep{k}.csv", index=False)
    lines: list[str] = []
    for state in result.crc.states:
        lines.extend(dump_params(state.params, prefix=f"node{state.v}."))
    write_dump(output_dir / f"params_rep{k}.txt", result.crc.states[0].params.schema, lines)


def aggregate_metrics(frames: list[pd.DataFrame]) -> pd.DataFrame:
    """Average per-round metrics across repetitions."""
    combined = pd.concat(frames, ignore_index=True)
    return combined.groupby("t", sort=True, as_index=False).mean()[METRIC_COLUMNS]


def run_experiment(
    config: ExperimentConfig, output_dir: str | Path | None = None, dataset: Dataset | None = None
) -> ExperimentResult:
    """Run every repetition of an experiment and write its output files.

    Args:
        config: Validated configuration
        output_dir: Target directory, resolved with :func:`resolve_output_dir`
        dataset: Preloaded dataset; read from ``config.data`` when omitted
    """
    t_start = time.time()
    out = resolve_output_dir(output_dir)
    out.mkdir(parents=True, exist_ok=True)
    dataset = dataset if dataset is not None else load_dataset(config)
    family = get_family(config.classifier)
    (out / "config.txt").write_text(config.to_text(), encoding="utf-8")

    repetitions = []
    for k in range(config.repetitions):
        result = run_repetition(config, dataset, k, family)
        _write_repetition(result, out)
        repetitions.append(result)

    aggregate = aggregate_metrics([metrics_frame(r.crc.metrics) for r in repetitions if r.crc is not None])
    aggregate.to_csv(out / "metrics_aggregate.csv", index=False)
    experiment = ExperimentResult(config=config, output_dir=out, repetitions=repetitions, aggregate=aggregate)
    experiment.baselines.to_csv(out / "baselines.csv", index=False)

    logger.info(
        "experiment_completed",
        output_dir=str(out),
        repetitions=config.repetitions,
        seconds=round(time.time() - t_start, 3),
    )
    return experiment


def run_baselines_only(
    config: ExperimentConfig, output_dir: str | Path | None = None, dataset: Dataset | None = None
) -> pd.DataFrame:
    """Train the RC and ML baselines for every repetition without running CRC."""
    out = resolve_output_dir(output_dir)
    out.mkdir(parents=True, exist_ok=True)
    dataset = dataset if dataset is not None else load_dataset(config)
    family = get_family(config.classifier)

    rows = []
    for k in range(config.repetitions):
        result = run_repetition(config, dataset, k, family, with_crc=False)
        result.rc.trace.to_csv(out / f"rc_trace_rep{k}.csv")
        rows.append(result.baseline_row())
    frame = pd.DataFrame(rows, columns=BASELINE_COLUMNS)
    frame.to_csv(out / "baselines.csv", index=False)
    return frame


def sweep_config(config: ExperimentConfig, axis: str, value: str) -> ExperimentConfig:
    """Configuration of one sweep point."""
    if axis != "fragmentation":
        return config.with_updates(**{axis: value})
    n = int(value)
    m_total = config.m_total if config.m_total is not None else config.global_size
    m_v, remainder = divmod(m_total, n)
    if remainder:
        logger.warning("fragmentation_remainder", m_total=m_total, n=n, m_v=m_v, unused=remainder)
    return config.with_updates(n=n, m_v=m_v, m_total=m_total)


def _sweep_row(axis: str, value: str, dataset_name: str, experiment: ExperimentResult) -> dict[str, object]:
    final = experiment.aggregate.iloc[-1]
    baselines = experiment.baselines
    ml_test_err = float(baselines["ml_test_err"].mean())
    rc_test_err = float(baselines["rc_test_err"].mean())
    return {
        "dataset": dataset_name,
        axis: value,
        "n": experiment.config.n,
        "m_v": experiment.config.m_v,
        "train_gap": float(final["train_gap"]),
        "test_gap": float(final["test_gap"]),
        "train_err_std": float(final["train_err_std"]),
        "test_err_std": float(final["test_err_std"]),
        "crc_test_err": float(final["test_err_mean"]),
        "rc_test_err": rc_test_err,
        "ml_test_gap": ml_test_err - rc_test_err,
        "rounds_to_converge": rounds_to_converge(experiment.aggregate),
    }


def _parse_sizes(values: list[str]) -> list[int]:
    try:
        sizes = [int(value) for value in values]
    except ValueError as e:
        raise ConfigError(f"train_size sweep values must be integers: {e}") from e
    if not sizes:
        raise ConfigError("train_size sweep needs at least one value")
    if any(size < 1 for size in sizes):
        raise ConfigError(f"train_size sweep values must be positive, got {sizes}")
    return sizes


def train_size_sweep(
    config: ExperimentConfig,
    sizes: list[int],
    output_dir: str | Path | None = None,
    dataset: Dataset | None = None,
) -> pd.DataFrame:
    """Test gaps of RC trained on growing prefixes of the training set against RC trained on all of it.

    Each repetition draws one train/test split (``config.train_size``, default ``n · m_v``
    training instances) and one random order of the training set. RC on the first ``size``
    instances is compared with the reference RC on the whole training set.

    Raises:
        ConfigError: A size exceeds the training set
    """
    out = resolve_output_dir(output_dir)
    out.mkdir(parents=True, exist_ok=True)
    dataset = dataset if dataset is not None else load_dataset(config)
    family = get_family(config.classifier)
    dataset_name = Path(config.data).stem if config.data else "dataset"

    def train_rc(train: Dataset) -> BaselineResult:
        return run_baseline(
            BaselineKind.RC, train, lr=config.lr, t_max=config.t_max, init_ess=config.rc_init_ess, family=family
        )

    runs = []
    for k in range(config.repetitions):
        streams = RepetitionStreams.spawn(config.seed, k)
        train, test = train_test_split(dataset, *config.resolved_split(dataset.m), streams.split)
        if max(sizes) > train.m:
            raise ConfigError(f"train_size {max(sizes)} exceeds the {train.m} training instances")
        reference_err = family.evaluate(train_rc(train).params, test)[0]
        order = streams.partition.permutation(train.m)
        for size in sizes:
            rc_err = family.evaluate(train_rc(train.subset(order[:size])).params, test)[0]
            runs.append({
                "rep": k,
                "seed": streams.seed,
                "train_size": size,
                "rc_test_err": rc_err,
                "reference_test_err": reference_err,
                "test_gap": rc_err - reference_err,
            })
        logger.info("train_size_repetition_completed", rep=k, reference_size=train.m, reference_test_err=reference_err)

    frame = pd.DataFrame(runs)
    frame.to_csv(out / "train_size_runs.csv", index=False)
    grouped = frame.groupby("train_size", sort=False)
    summary = pd.DataFrame({
        "dataset": dataset_name,
        "train_size": sizes,
        "reference_size": config.resolved_split(dataset.m)[0],
        "rc_test_err": grouped["rc_test_err"].mean().loc[sizes].to_numpy(),
        "reference_test_err": grouped["reference_test_err"].mean().loc[sizes].to_numpy(),
        "test_gap": grouped["test_gap"].mean().loc[sizes].to_numpy(),
    })
    summary.to_csv(out / "sweep_train_size.csv", index=False)
    return summary


def sweep(
    config: ExperimentConfig,
    axis: str,
    values: list[str],
    output_dir: str | Path | None = None,
    dataset: Dataset | None = None,
) -> pd.DataFrame:
    """Run one experiment per value of ``axis`` and write a summary table.

    The ``train_size`` axis is handed to :func:`train_size_sweep`.

    Raises:
        InvalidSweepAxisError: ``axis`` is not a sweepable setting
    """
    axis = _AXIS_ALIASES.get(axis, axis)
    if axis not in SWEEP_AXES:
        raise InvalidSweepAxisError(axis, SWEEP_AXES)
    if axis == "train_size":
        return train_size_sweep(config, _parse_sizes([value.strip() for value in values]), output_dir, dataset)
    out = resolve_output_dir(output_dir)
    dataset = dataset if dataset is not None else load_dataset(config)
    dataset_name = Path(config.data).stem if config.data else "dataset"

    rows = []
    for value in values:
        point = sweep_config(config, axis, value.strip())
        logger.info("sweep_point_started", axis=axis, value=value)
        experiment = run_experiment(point, out / f"{axis}={value.strip()}", dataset)
        rows.append(_sweep_row(axis, value.strip(), dataset_name, experiment))

    summary = pd.DataFrame(rows)
    summary.to_csv(out / f"sweep_{axis}.csv", index=False)
    return summary
