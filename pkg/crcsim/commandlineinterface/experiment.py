"""Experiment commands: run, sweep and baseline."""

from collections.abc import Callable
from pathlib import Path
from typing import TypeVar

import pandas as pd
import typer
from rich.console import Console
from rich.markup import escape
from rich.table import Table

from crcsim.exceptions import CRCSimError
from crcsim.experiment.config import ExperimentConfig, parse_config
from crcsim.experiment.runner import resolve_output_dir, run_baselines_only, run_experiment, sweep
from crcsim.utils.logging import get_logger, setup_logging

console = Console()
logger = get_logger(__name__)

T = TypeVar("T")


def guarded(action: Callable[[], T]) -> T:
    """Run ``action``; report simulator errors in red and exit with status 1."""
    try:
        return action()
    except CRCSimError as e:
        logger.error("command_failed", error=str(e), error_type=type(e).__name__)  # noqa: TRY400
        console.print(f"[red]Error: {escape(str(e))}[/red]")
        raise typer.Exit(1) from None


def build_config(config_path: str | None, overrides: list[str], data: str | None, seed: int | None) -> ExperimentConfig:
    flags = list(overrides)
    if data is not None:
        flags.append(f"data={data}")
    if seed is not None:
        flags.append(f"seed={seed}")
    return parse_config(config_path, flags)


def _frame_table(title: str, frame: pd.DataFrame, columns: list[str]) -> Table:
    table = Table(title=title)
    for column in columns:
        table.add_column(column, justify="right")
    for _, row in frame.iterrows():
        table.add_row(*(f"{row[c]:.4f}" if isinstance(row[c], float) else str(row[c]) for c in columns))
    return table


def start_run(
    config_path: str | None,
    overrides: list[str],
    output_dir: str | None,
    data: str | None = None,
    seed: int | None = None,
    log_level: str = "INFO",
    pretty: bool = True,
) -> None:
    """Run one experiment and print the final-round summary."""
    setup_logging(level=log_level, pretty=pretty)

    def action() -> None:
        config = build_config(config_path, overrides, data, seed)
        result = run_experiment(config, output_dir)
        final = result.aggregate.tail(1)
        console.print(
            _frame_table(
                f"Final round (averaged over {config.repetitions} repetitions)",
                final,
                ["t", "train_err_mean", "test_err_mean", "test_err_std", "rc_test_err", "test_gap"],
            )
        )
        console.print(f"Results written to {result.output_dir}")

    guarded(action)


def start_sweep(
    config_path: str | None,
    overrides: list[str],
    axis: str,
    values: list[str],
    output_dir: str | None,
    data: str | None = None,
    seed: int | None = None,
    log_level: str = "INFO",
    pretty: bool = True,
) -> None:
    """Sweep one axis and print the summary table."""
    setup_logging(level=log_level, pretty=pretty)

    def action() -> None:
        config = build_config(config_path, overrides, data, seed)
        summary = sweep(config, axis, values, output_dir)
        columns = [c for c in summary.columns if c not in ("dataset", "n", "m_v")]
        console.print(_frame_table(f"Sweep over {axis}", summary, columns))
        console.print(f"Results written to {resolve_output_dir(output_dir)}")

    guarded(action)


def start_baseline(
    config_path: str | None,
    overrides: list[str],
    output_dir: str | None,
    data: str | None = None,
    seed: int | None = None,
    log_level: str = "INFO",
    pretty: bool = True,
) -> None:
    """Train the RC and ML baselines only."""
    setup_logging(level=log_level, pretty=pretty)

    def action() -> None:
        config = build_config(config_path, overrides, data, seed)
        frame = run_baselines_only(config, output_dir)
        console.print(_frame_table("Baselines", frame, list(frame.columns)))
        console.print(f"Results written to {Path(resolve_output_dir(output_dir))}")

    guarded(action)
