"""Command-line front door.

Verbs: config show, ingest, select, rcf, load, gasprice, analyze, run.
Every verb accepts --config (also via $RCFKIT_CONFIG), --window, --out.
Exit status is 0 unless a fatal error occurs; row-level warnings are
reported but never change the exit status.
"""

from __future__ import annotations

import functools
from dataclasses import replace
from pathlib import Path

import click

from . import ingest as ingest_mod
from .errors import RcfError
from .metrics import (
    FOSSIL_FUELS,
    RcfQuery,
    compute_monthly_load,
    compute_rcf,
    compute_regional_gas_price,
)
from .pipeline import PipelineManifest, execute, run_pipeline, write_selection_csvs
from .regions import (
    CONFIG_PATH_ENV_VAR,
    MID_ATLANTIC,
    WESTERN,
    RegionConfig,
    format_config,
    parse_window,
    resolve_config,
)
from .report import format_findings_text, format_series_csv, write_findings, write_series_csv
from .selection import build_profiles, select_plants

FUEL_CHOICES = ("coal", "natural_gas", "nuclear", "other", "fossil")


def common_options(f):
    f = click.option(
        "--config",
        "config_path",
        type=click.Path(path_type=Path),
        envvar=CONFIG_PATH_ENV_VAR,
        default=None,
        help="Config file overriding the shipped defaults.",
    )(f)
    f = click.option(
        "--window", "window_text", default=None, help="Study window, e.g. 2015-07..2017-12."
    )(f)
    f = click.option(
        "--out",
        "out_dir",
        type=click.Path(path_type=Path),
        default=None,
        help="Output directory; most verbs print to stdout without it.",
    )(f)
    return f


def fatal_errors(f):
    @functools.wraps(f)
    def wrapper(*args, **kwargs):
        try:
            return f(*args, **kwargs)
        except (RcfError, FileNotFoundError) as exc:
            raise click.ClickException(str(exc))

    return wrapper


def _effective_config(config_path: Path | None, window_text: str | None) -> RegionConfig:
    config = resolve_config(config_path)
    if window_text:
        config = replace(config, study_window=parse_window(window_text))
    return config


def _echo_warnings(name: str, warnings) -> None:
    for w in warnings:
        click.echo(f"warning: {name} {w}", err=True)


@click.group()
@click.version_option(package_name="rcfkit")
def cli() -> None:
    """Regional capacity factor analytics for wholesale power market data."""


@cli.group()
def config() -> None:
    """Configuration inspection."""


@config.command("show")
@common_options
@fatal_errors
def config_show(config_path, window_text, out_dir) -> None:
    """Print the effective configuration in loadable key=value form."""
    text = format_config(_effective_config(config_path, window_text))
    if out_dir:
        out_dir.mkdir(parents=True, exist_ok=True)
        (out_dir / "config.txt").write_text(text, encoding="utf-8")
    click.echo(text, nl=False)


@cli.command("ingest")
@click.option("--generation", type=click.Path(path_type=Path), default=None)
@click.option("--capacity", type=click.Path(path_type=Path), default=None)
@click.option("--gas-prices", type=click.Path(path_type=Path), default=None)
@click.option("--hourly-load", type=click.Path(path_type=Path), default=None)
@common_options
@fatal_errors
def ingest_cmd(generation, capacity, gas_prices, hourly_load, config_path, window_text, out_dir) -> None:
    """Validate inputs and write normalized canonical copies.

    Requires at least one input file and --out; normalized files land in
    <out>/normalized/.
    """
    cfg = _effective_config(config_path, window_text)
    jobs = []
    if generation:
        jobs.append(("generation", generation,
                     lambda text: ingest_mod.parse_generation(text, cfg),
                     ingest_mod.format_generation))
    if capacity:
        jobs.append(("capacity", capacity,
                     lambda text: ingest_mod.parse_capacity(text, cfg),
                     ingest_mod.format_capacity))
    if gas_prices:
        jobs.append(("gas_prices", gas_prices,
                     ingest_mod.parse_gas_prices, ingest_mod.format_gas_prices))
    if hourly_load:
        jobs.append(("hourly_load", hourly_load,
                     ingest_mod.parse_hourly_load, ingest_mod.format_hourly_load))
    if not jobs:
        raise click.UsageError("give at least one input file to ingest")
    if out_dir is None:
        raise click.UsageError("ingest needs --out for the normalized files")

    normalized_dir = out_dir / "normalized"
    normalized_dir.mkdir(parents=True, exist_ok=True)
    for name, path, parse, fmt in jobs:
        if not Path(path).is_file():
            raise click.ClickException(f"{name} input file not found: {path}")
        records, warnings = parse(Path(path).read_text(encoding="utf-8"))
        _echo_warnings(name, warnings)
        (normalized_dir / f"{name}.csv").write_text(fmt(records), encoding="utf-8")
        click.echo(f"{name}: {len(records)} records, {len(warnings)} warning(s)")


def _profiles_from_files(generation: Path, capacity: Path, cfg: RegionConfig):
    for name, path in (("generation", generation), ("capacity", capacity)):
        if not Path(path).is_file():
            raise FileNotFoundError(f"{name} input file not found: {path}")
    gen, gen_warn = ingest_mod.parse_generation(
        Path(generation).read_text(encoding="utf-8"), cfg
    )
    cap, cap_warn = ingest_mod.parse_capacity(
        Path(capacity).read_text(encoding="utf-8"), cfg
    )
    _echo_warnings("generation", gen_warn)
    _echo_warnings("capacity", cap_warn)
    return gen, cap, build_profiles(gen, cap, cfg)


@cli.command("select")
@click.option("--generation", type=click.Path(path_type=Path), required=True)
@click.option("--capacity", type=click.Path(path_type=Path), required=True)
@click.option("--region", "region_opt", default=None,
              help=f"Single region; default both {WESTERN} and {MID_ATLANTIC}.")
@common_options
@fatal_errors
def select_cmd(generation, capacity, region_opt, config_path, window_text, out_dir) -> None:
    """Apply the plant selection criteria and summarize capacity by fuel."""
    cfg = _effective_config(config_path, window_text)
    _, _, profiles = _profiles_from_files(generation, capacity, cfg)
    regions = (region_opt,) if region_opt else (WESTERN, MID_ATLANTIC)
    selections = {r: select_plants(profiles, r, cfg) for r in regions}

    if out_dir:
        out_dir.mkdir(parents=True, exist_ok=True)
        write_selection_csvs(profiles, selections, out_dir)
    for region, selection in sorted(selections.items()):
        click.echo(
            f"{region}: {selection.plant_count} plant(s), "
            f"{sum(selection.total_capacity_by_fuel.values()):.2f} GW at "
            f"{selection.reference_month}"
        )
        if selection.note:
            click.echo(f"  note: {selection.note}")


def _emit_series(series, out_dir: Path | None) -> None:
    if out_dir:
        out_dir.mkdir(parents=True, exist_ok=True)
        path = write_series_csv(series, out_dir / f"{series.label}.csv")
        click.echo(f"wrote {path}")
    else:
        click.echo(format_series_csv(series), nl=False)
    for w in series.warnings:
        click.echo(f"warning: {series.label}: {w}", err=True)


@cli.command("rcf")
@click.option("--generation", type=click.Path(path_type=Path), required=True)
@click.option("--capacity", type=click.Path(path_type=Path), required=True)
@click.option("--region", required=True)
@click.option("--fuel", "fuel_opt", type=click.Choice(FUEL_CHOICES), default=None)
@common_options
@fatal_errors
def rcf_cmd(generation, capacity, region, fuel_opt, config_path, window_text, out_dir) -> None:
    """Monthly regional capacity factor series (optionally per fuel)."""
    cfg = _effective_config(config_path, window_text)
    gen, cap, profiles = _profiles_from_files(generation, capacity, cfg)
    selection = select_plants(profiles, region, cfg)
    if selection.note:
        click.echo(f"note: {selection.note}", err=True)
    fuels = FOSSIL_FUELS if fuel_opt == "fossil" else fuel_opt
    series = compute_rcf(selection, gen, cap, RcfQuery.of(region, fuels), cfg)
    _emit_series(series, out_dir)


@cli.command("load")
@click.option("--hourly-load", type=click.Path(path_type=Path), required=True)
@common_options
@fatal_errors
def load_cmd(hourly_load, config_path, window_text, out_dir) -> None:
    """Monthly peak-hour system load series."""
    cfg = _effective_config(config_path, window_text)
    if not Path(hourly_load).is_file():
        raise FileNotFoundError(f"hourly_load input file not found: {hourly_load}")
    records, warnings = ingest_mod.parse_hourly_load(
        Path(hourly_load).read_text(encoding="utf-8")
    )
    _echo_warnings("hourly_load", warnings)
    series = compute_monthly_load(records, cfg.study_window, cfg)
    _emit_series(series, out_dir)


@cli.command("gasprice")
@click.option("--gas-prices", type=click.Path(path_type=Path), required=True)
@click.option("--region", required=True)
@common_options
@fatal_errors
def gasprice_cmd(gas_prices, region, config_path, window_text, out_dir) -> None:
    """Monthly regional gas price series (mean of configured state prices)."""
    cfg = _effective_config(config_path, window_text)
    if not Path(gas_prices).is_file():
        raise FileNotFoundError(f"gas_prices input file not found: {gas_prices}")
    records, warnings = ingest_mod.parse_gas_prices(
        Path(gas_prices).read_text(encoding="utf-8")
    )
    _echo_warnings("gas_prices", warnings)
    series = compute_regional_gas_price(records, region, cfg.study_window, cfg)
    _emit_series(series, out_dir)


def _manifest(generation, capacity, gas_prices, hourly_load, config_path, window_text, out_dir):
    return PipelineManifest(
        generation=generation,
        capacity=capacity,
        gas_prices=gas_prices,
        hourly_load=hourly_load,
        out_dir=out_dir if out_dir else Path("out"),
        config_path=config_path,
        window=parse_window(window_text) if window_text else None,
    )


@cli.command("analyze")
@click.option("--generation", type=click.Path(path_type=Path), required=True)
@click.option("--capacity", type=click.Path(path_type=Path), required=True)
@click.option("--gas-prices", type=click.Path(path_type=Path), required=True)
@click.option("--hourly-load", type=click.Path(path_type=Path), required=True)
@common_options
@fatal_errors
def analyze_cmd(generation, capacity, gas_prices, hourly_load, config_path, window_text, out_dir) -> None:
    """Correlations, seasonal fits, and slope comparisons as a findings report."""
    manifest = _manifest(
        generation, capacity, gas_prices, hourly_load, config_path, window_text, out_dir
    )
    result = execute(manifest)
    if out_dir:
        out_dir.mkdir(parents=True, exist_ok=True)
        write_findings(result.findings, out_dir)
    click.echo(format_findings_text(result.findings), nl=False)
    for w in result.all_warnings():
        click.echo(f"warning: {w}", err=True)


@cli.command("run")
@click.option("--generation", type=click.Path(path_type=Path), required=True)
@click.option("--capacity", type=click.Path(path_type=Path), required=True)
@click.option("--gas-prices", type=click.Path(path_type=Path), required=True)
@click.option("--hourly-load", type=click.Path(path_type=Path), required=True)
@common_options
@fatal_errors
def run_cmd(generation, capacity, gas_prices, hourly_load, config_path, window_text, out_dir) -> None:
    """Full pipeline: series CSVs, selection CSVs, four charts, reports."""
    manifest = _manifest(
        generation, capacity, gas_prices, hourly_load, config_path, window_text, out_dir
    )
    report = run_pipeline(manifest)
    click.echo(
        f"wrote {len(report.outputs)} file(s) to {manifest.out_dir} "
        f"({report.total_warnings} warning(s))"
    )


main = cli

if __name__ == "__main__":
    main()
