"""Command-line interface for crcsim."""

from typing import Annotated

import typer

from crcsim.commandlineinterface.experiment import start_baseline, start_run, start_sweep
from crcsim.commandlineinterface.generate import DataKind, start_gendata, start_gengraph

app_cli = typer.Typer(help="Simulate collaborative risk-based calibration of naive Bayes over communication graphs.")

ConfigOption = Annotated[str | None, typer.Option("--config", "-c", help="Config file of 'key = value' lines.")]
SetOption = Annotated[
    list[str] | None, typer.Option("--set", "-s", help="Override a config key, e.g. --set iter=3 (repeatable).")
]
OutputDirOption = Annotated[
    str | None, typer.Option("--output-dir", "-o", help="Output directory (default: $CRCSIM_OUTPUT_DIR or ./results).")
]
DataOption = Annotated[str | None, typer.Option(help="Dataset CSV; same as --set data=<path>.")]
SeedOption = Annotated[int | None, typer.Option(help="Master seed; same as --set seed=<int>.")]


@app_cli.command()
def run(
    config: ConfigOption = None,
    set_: SetOption = None,
    output_dir: OutputDirOption = None,
    data: DataOption = None,
    seed: SeedOption = None,
    log_level: str = "INFO",
    pretty: bool = True,
) -> None:
    """Run an experiment: baselines and CRC for every repetition."""
    start_run(config, set_ or [], output_dir, data, seed, log_level, pretty)


@app_cli.command()
def sweep(
    axis: Annotated[str, typer.Option(help="One of m_v, n, topology, partition, iter, delta, fragmentation, train_size.")],
    values: Annotated[str, typer.Option(help="Comma-separated values, e.g. 1,2,3 or inf,8,4.")],
    config: ConfigOption = None,
    set_: SetOption = None,
    output_dir: OutputDirOption = None,
    data: DataOption = None,
    seed: SeedOption = None,
    log_level: str = "INFO",
    pretty: bool = True,
) -> None:
    """Run one experiment per value of a setting and summarize the gaps."""
    start_sweep(config, set_ or [], axis, [v for v in values.split(",") if v.strip()], output_dir, data, seed, log_level, pretty)


@app_cli.command()
def baseline(
    config: ConfigOption = None,
    set_: SetOption = None,
    output_dir: OutputDirOption = None,
    data: DataOption = None,
    seed: SeedOption = None,
    log_level: str = "INFO",
    pretty: bool = True,
) -> None:
    """Train only the RC and ML baselines on the pooled data."""
    start_baseline(config, set_ or [], output_dir, data, seed, log_level, pretty)


@app_cli.command()
def gengraph(
    n: Annotated[int, typer.Option(help="Number of nodes.")] = 50,
    topology: Annotated[str, typer.Option(help="tree, chain, full, or tree+<k>.")] = "tree",
    seed: SeedOption = None,
    output: Annotated[str | None, typer.Option(help="Edge-list file; stdout when omitted.")] = None,
    log_level: str = "INFO",
    pretty: bool = True,
) -> None:
    """Emit a communication graph as an edge list."""
    start_gengraph(n, topology, seed, output, log_level, pretty)


@app_cli.command()
def gendata(
    output: Annotated[str, typer.Option(help="CSV file to write.")],
    kind: Annotated[DataKind, typer.Option(help="Generator.")] = DataKind.BLOBS,
    m: Annotated[int, typer.Option(help="Number of instances.")] = 5000,
    d: Annotated[int, typer.Option(help="Features (continuous features for mixed).")] = 2,
    r: Annotated[int, typer.Option(help="Classes.")] = 2,
    separation: Annotated[float, typer.Option(help="Distance of class means from the origin.")] = 4.0,
    cardinality: Annotated[int, typer.Option(help="Categories per discrete feature.")] = 3,
    seed: SeedOption = None,
    log_level: str = "INFO",
    pretty: bool = True,
) -> None:
    """Write a synthetic Gaussian-blob, categorical-mixture or mixed dataset."""
    start_gendata(kind, m, output, d, r, separation, cardinality, seed, log_level, pretty)


if __name__ == "__main__":
    app_cli()
