"""Full pipeline orchestration: ingest -> select -> metrics -> analysis -> outputs.

All computation happens before any file is written, so a fatal error never
leaves partial output behind. Output writing is serialized and carries no
timestamps; two runs over identical inputs produce byte-identical trees.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from pathlib import Path

from . import ingest
from .analysis import align, seasonal_split
from .charts import (
    CHART_DUAL_AXIS,
    CHART_SCATTER_FIT,
    ChartSpec,
    PanelSpec,
    emit_chart,
)
from .metrics import (
    FOSSIL_FUELS,
    MonthlySeries,
    RcfQuery,
    compute_monthly_load,
    compute_rcf,
    compute_regional_gas_price,
)
from .regions import COAL, MID_ATLANTIC, NATURAL_GAS, WESTERN, Month, RegionConfig, resolve_config
from .report import build_findings, write_findings, write_series_csv
from .selection import PlantProfile, SelectionResult, build_profiles, mean_monthly_capacity, select_plants


@dataclass(frozen=True)
class PipelineManifest:
    generation: Path
    capacity: Path
    gas_prices: Path
    hourly_load: Path
    out_dir: Path = Path("out")
    config_path: Path | None = None
    window: tuple[Month, Month] | None = None
    regions: tuple[str, ...] = (WESTERN, MID_ATLANTIC)
    fuels: tuple[str, ...] = (NATURAL_GAS, COAL)


@dataclass
class PipelineResult:
    config: RegionConfig
    profiles: list[PlantProfile]
    selections: dict[str, SelectionResult]
    rcf_overall: dict[str, MonthlySeries]
    rcf_by_fuel: dict[str, dict[str, MonthlySeries]]
    load_series: MonthlySeries
    gas_series: dict[str, MonthlySeries]
    findings: dict
    ingest_warnings: list[str]
    record_counts: dict[str, int]

    def all_series(self) -> list[MonthlySeries]:
        series = [self.load_series]
        for region in sorted(self.rcf_overall):
            series.append(self.rcf_overall[region])
        for region in sorted(self.rcf_by_fuel):
            for key in sorted(self.rcf_by_fuel[region]):
                series.append(self.rcf_by_fuel[region][key])
        for region in sorted(self.gas_series):
            series.append(self.gas_series[region])
        return series

    def all_warnings(self) -> list[str]:
        lines = list(self.ingest_warnings)
        for series in self.all_series():
            for w in series.warnings:
                lines.append(f"series {series.label}: {w}")
            for p in series.points:
                for w in p.warnings:
                    lines.append(f"series {series.label} {p.month}: {w}")
        return lines


@dataclass
class RunReport:
    result: PipelineResult
    outputs: list[Path] = field(default_factory=list)

    @property
    def total_warnings(self) -> int:
        return len(self.result.all_warnings())


def _load_config(manifest: PipelineManifest) -> RegionConfig:
    config = resolve_config(manifest.config_path)
    if manifest.window is not None:
        config = replace(config, study_window=manifest.window)
    return config


def execute(manifest: PipelineManifest) -> PipelineResult:
    """Run every stage in memory; raises before any output is written."""
    inputs = {
        "generation": Path(manifest.generation),
        "capacity": Path(manifest.capacity),
        "gas_prices": Path(manifest.gas_prices),
        "hourly_load": Path(manifest.hourly_load),
    }
    for name, path in inputs.items():
        if not path.is_file():
            raise FileNotFoundError(f"{name} input file not found: {path}")

    config = _load_config(manifest)

    warnings: list[str] = []

    def read(name: str) -> str:
        return inputs[name].read_text(encoding="utf-8")

    gen, gen_warn = ingest.parse_generation(read("generation"), config)
    cap, cap_warn = ingest.parse_capacity(read("capacity"), config)
    prices, price_warn = ingest.parse_gas_prices(read("gas_prices"))
    load, load_warn = ingest.parse_hourly_load(read("hourly_load"))
    for name, source_warnings in (
        ("generation", gen_warn),
        ("capacity", cap_warn),
        ("gas_prices", price_warn),
        ("hourly_load", load_warn),
    ):
        warnings.extend(f"{name} {w}" for w in source_warnings)

    profiles = build_profiles(gen, cap, config)
    selections = {
        region: select_plants(profiles, region, config) for region in manifest.regions
    }

    window = config.study_window
    load_series = compute_monthly_load(load, window, config)

    rcf_overall: dict[str, MonthlySeries] = {}
    rcf_by_fuel: dict[str, dict[str, MonthlySeries]] = {}
    gas_series: dict[str, MonthlySeries] = {}
    for region in manifest.regions:
        selection = selections[region]
        rcf_overall[region] = compute_rcf(
            selection, gen, cap, RcfQuery.of(region), config
        )
        per_fuel: dict[str, MonthlySeries] = {
            "fossil": compute_rcf(
                selection, gen, cap, RcfQuery.of(region, FOSSIL_FUELS), config
            )
        }
        for fuel in manifest.fuels:
            per_fuel[fuel] = compute_rcf(
                selection, gen, cap, RcfQuery.of(region, fuel), config
            )
        rcf_by_fuel[region] = per_fuel
        if region in config.gas_states:
            gas_series[region] = compute_regional_gas_price(
                prices, region, window, config
            )

    findings = build_findings(
        selections, rcf_overall, rcf_by_fuel, load_series, gas_series, config
    )
    return PipelineResult(
        config=config,
        profiles=profiles,
        selections=selections,
        rcf_overall=rcf_overall,
        rcf_by_fuel=rcf_by_fuel,
        load_series=load_series,
        gas_series=gas_series,
        findings=findings,
        ingest_warnings=warnings,
        record_counts={
            "generation": len(gen),
            "capacity": len(cap),
            "gas_prices": len(prices),
            "hourly_load": len(load),
        },
    )


def write_selection_csvs(
    profiles: list[PlantProfile],
    selections: dict[str, SelectionResult],
    out_dir: Path,
) -> list[Path]:
    """Per-region plant list and fuel-capacity summary, mirroring `select`."""
    written = []
    by_id = {p.plant_id: p for p in profiles}
    for region, selection in sorted(selections.items()):
        plants_path = out_dir / f"plants_{region}.csv"
        lines = ["plant_id,state,region,mean_capacity_mw"]
        for plant_id in sorted(selection.plant_ids):
            profile = by_id[plant_id]
            lines.append(
                f"{plant_id},{profile.state},{profile.region},"
                f"{mean_monthly_capacity(profile)!r}"
            )
        plants_path.write_text("\n".join(lines) + "\n", encoding="utf-8")
        written.append(plants_path)

        summary_path = out_dir / f"capacity_by_fuel_{region}.csv"
        lines = ["fuel,capacity_gw"]
        for fuel, gw in sorted(selection.total_capacity_by_fuel.items()):
            lines.append(f"{fuel},{gw!r}")
        summary_path.write_text("\n".join(lines) + "\n", encoding="utf-8")
        written.append(summary_path)
    return written


def _chart_specs(result: PipelineResult) -> list[tuple[str, ChartSpec, dict]]:
    regions = sorted(result.rcf_overall)
    series_map: dict[str, object] = {s.label: s for s in result.all_series()}

    charts: list[tuple[str, ChartSpec, dict]] = []
    charts.append(
        (
            "rcf_load_timeseries.svg",
            ChartSpec(
                kind=CHART_DUAL_AXIS,
                title="regional capacity factors and system load",
                x_label="month",
                y_label="capacity factor",
                y2_label="system load (MW)",
                left_series=tuple(f"rcf_{r}" for r in regions),
                right_series=("system_load",),
            ),
            series_map,
        )
    )
    gas_labels = tuple(f"gas_price_{r}" for r in sorted(result.gas_series))
    charts.append(
        (
            "rcf_gas_price_timeseries.svg",
            ChartSpec(
                kind=CHART_DUAL_AXIS,
                title="regional capacity factors and gas prices",
                x_label="month",
                y_label="capacity factor",
                y2_label="gas price ($/MMBtu)",
                left_series=tuple(f"rcf_{r}" for r in regions),
                right_series=gas_labels,
            ),
            series_map,
        )
    )
    fuel_labels = []
    for region in regions:
        for key in sorted(result.rcf_by_fuel[region]):
            if key != "fossil":
                fuel_labels.append(result.rcf_by_fuel[region][key].label)
    charts.append(
        (
            "fuel_rcf_gas_price_timeseries.svg",
            ChartSpec(
                kind=CHART_DUAL_AXIS,
                title="per-fuel capacity factors and gas prices",
                x_label="month",
                y_label="capacity factor",
                y2_label="gas price ($/MMBtu)",
                left_series=tuple(fuel_labels),
                right_series=gas_labels,
            ),
            series_map,
        )
    )

    scatter_map: dict[str, object] = {}
    panel_series: dict[str, list[str]] = {"non-winter": [], "winter": []}
    for region in regions:
        fossil = result.rcf_by_fuel[region]["fossil"]
        winter, non_winter = seasonal_split(
            align(result.load_series, fossil), result.config
        )
        for season_name, pairs in (("non-winter", non_winter), ("winter", winter)):
            key = f"{region} ({season_name})"
            scatter_map[key] = pairs
            panel_series[season_name].append(key)
    charts.append(
        (
            "rcf_vs_load_scatter.svg",
            ChartSpec(
                kind=CHART_SCATTER_FIT,
                title="fossil capacity factor vs system load",
                x_label="system load (MW)",
                y_label="capacity factor",
                panels=(
                    PanelSpec("non-winter months", tuple(panel_series["non-winter"])),
                    PanelSpec("winter months", tuple(panel_series["winter"])),
                ),
            ),
            scatter_map,
        )
    )
    return charts


def write_run_report(report: RunReport, path: Path) -> Path:
    result = report.result
    lines = ["run report", "=" * 10]
    lines.append(f"window: {result.findings['window']}")
    for name in ("generation", "capacity", "gas_prices", "hourly_load"):
        lines.append(f"{name}: {result.record_counts[name]} records ingested")
    for region, selection in sorted(result.selections.items()):
        lines.append(f"selected {selection.plant_count} plants for {region}")
    lines.append(f"outputs written: {len(report.outputs)}")
    warnings = result.all_warnings()
    lines.append(f"total warnings: {len(warnings)}")
    for w in warnings:
        lines.append(f"  {w}")
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def run_pipeline(manifest: PipelineManifest) -> RunReport:
    """Execute the full pipeline and write the output tree.

    Layout: <out>/series/*.csv, <out>/selection/*.csv, <out>/charts/*.svg,
    <out>/report.txt, <out>/report.json, <out>/run_report.txt.
    """
    result = execute(manifest)
    out_dir = Path(manifest.out_dir)
    series_dir = out_dir / "series"
    charts_dir = out_dir / "charts"
    selection_dir = out_dir / "selection"
    for d in (series_dir, charts_dir, selection_dir):
        d.mkdir(parents=True, exist_ok=True)

    report = RunReport(result=result)
    for series in result.all_series():
        report.outputs.append(write_series_csv(series, series_dir / f"{series.label}.csv"))
    report.outputs.extend(
        write_selection_csvs(result.profiles, result.selections, selection_dir)
    )
    for filename, spec, series_map in _chart_specs(result):
        report.outputs.append(emit_chart(spec, series_map, charts_dir / filename))
    report.outputs.extend(write_findings(result.findings, out_dir))
    report.outputs.append(write_run_report(report, out_dir / "run_report.txt"))
    return report
