"""Findings assembly and report/CSV rendering.

Machine outputs (series CSVs, report.json) carry full double precision;
the human report rounds for readability: capacity factors and fit
statistics to 4 decimals, prices to 2, loads to whole MW. Slopes are
printed per GW because per-MW values are around 1e-6; the raw per-MW
numbers stay in the machine output.
"""

from __future__ import annotations

import json
from pathlib import Path

from .analysis import align, compare_slopes, ols_fit, pearson, seasonal_split
from .errors import DegenerateDataError, InsufficientDataError
from .metrics import MonthlySeries
from .regions import RegionConfig
from .selection import SelectionResult


def format_series_csv(series: MonthlySeries) -> str:
    lines = ["month,value,coverage_count,warnings_count"]
    for p in series.points:
        lines.append(f"{p.month},{p.value!r},{p.coverage},{len(p.warnings)}")
    return "\n".join(lines) + "\n"


def write_series_csv(series: MonthlySeries, path: str | Path) -> Path:
    path = Path(path)
    path.write_text(format_series_csv(series), encoding="utf-8")
    return path


def _fit_or_error(pairs):
    try:
        fit = ols_fit(pairs)
    except (InsufficientDataError, DegenerateDataError) as exc:
        return {"error": str(exc), "n": len(pairs)}
    return {
        "slope_per_mw": fit.slope,
        "slope_per_gw": fit.slope * 1000.0,
        "intercept": fit.intercept,
        "r_squared": fit.r_squared,
        "n": fit.n,
    }


def _pearson_or_error(pairs):
    try:
        return pearson(pairs)
    except (InsufficientDataError, DegenerateDataError) as exc:
        return {"error": str(exc), "n": len(pairs)}


def build_findings(
    selections: dict[str, SelectionResult],
    rcf_overall: dict[str, MonthlySeries],
    rcf_by_fuel: dict[str, dict[str, MonthlySeries]],
    load_series: MonthlySeries,
    gas_series: dict[str, MonthlySeries],
    config: RegionConfig,
) -> dict:
    """The machine-readable findings: correlations, seasonal fits, comparisons."""
    regions = sorted(selections)
    findings: dict = {
        "window": f"{config.study_window[0]}..{config.study_window[1]}",
        "selection": {},
        "correlation_with_load": {},
        "seasonal_fits": {},
        "slope_comparisons": {},
        "series_files": {},
    }

    for region in regions:
        sel = selections[region]
        entry = {
            "plant_count": sel.plant_count,
            "reference_month": str(sel.reference_month) if sel.reference_month else None,
            "capacity_gw_by_fuel": dict(sorted(sel.total_capacity_by_fuel.items())),
            "total_capacity_gw": sum(sel.total_capacity_by_fuel.values()),
        }
        if sel.note:
            entry["note"] = sel.note
        findings["selection"][region] = entry

    for region in regions:
        pairs = align(load_series, rcf_overall[region])
        findings["correlation_with_load"][region] = _pearson_or_error(pairs)

    fuel_keys: list[str] = sorted({k for fuels in rcf_by_fuel.values() for k in fuels})
    seasonal_pairs: dict[tuple[str, str, str], object] = {}
    for region in regions:
        findings["seasonal_fits"][region] = {}
        for fuel_key in fuel_keys:
            series = rcf_by_fuel.get(region, {}).get(fuel_key)
            if series is None:
                continue
            winter, non_winter = seasonal_split(align(load_series, series), config)
            seasonal_pairs[(region, fuel_key, "winter")] = winter
            seasonal_pairs[(region, fuel_key, "non_winter")] = non_winter
            findings["seasonal_fits"][region][fuel_key] = {
                "winter": _fit_or_error(winter),
                "non_winter": _fit_or_error(non_winter),
            }

    if len(regions) == 2:
        first, second = regions
        for fuel_key in fuel_keys:
            findings["slope_comparisons"][fuel_key] = {}
            for season in ("winter", "non_winter"):
                fit_a = findings["seasonal_fits"].get(first, {}).get(fuel_key, {}).get(season)
                fit_b = findings["seasonal_fits"].get(second, {}).get(fuel_key, {}).get(season)
                if not fit_a or not fit_b or "error" in fit_a or "error" in fit_b:
                    findings["slope_comparisons"][fuel_key][season] = {
                        "error": "fit unavailable for one or both regions"
                    }
                    continue
                slope_a, slope_b = fit_a["slope_per_mw"], fit_b["slope_per_mw"]
                if slope_a > slope_b:
                    larger = first
                elif slope_b > slope_a:
                    larger = second
                else:
                    larger = "equal"
                findings["slope_comparisons"][fuel_key][season] = {
                    "larger": larger,
                    "difference_per_mw": abs(slope_a - slope_b),
                    "slopes_per_mw": {first: slope_a, second: slope_b},
                }

    all_series = [load_series, *rcf_overall.values(), *gas_series.values()]
    for fuels in rcf_by_fuel.values():
        all_series.extend(fuels.values())
    findings["series_files"] = {s.label: f"series/{s.label}.csv" for s in all_series}
    return findings


def format_findings_text(findings: dict) -> str:
    """Human-readable report; every number also lives in report.json or a CSV."""
    out: list[str] = []
    out.append("regional capacity factor findings")
    out.append("=" * 33)
    out.append(f"window: {findings['window']}")
    out.append("")

    out.append("plant selection")
    out.append("-" * 15)
    for region, sel in sorted(findings["selection"].items()):
        out.append(
            f"{region}: {sel['plant_count']} plants, "
            f"{sel['total_capacity_gw']:.2f} GW at {sel['reference_month']}"
        )
        for fuel, gw in sel["capacity_gw_by_fuel"].items():
            out.append(f"  {fuel}: {gw:.2f} GW")
        if sel.get("note"):
            out.append(f"  note: {sel['note']}")
    out.append("")

    out.append("correlation of capacity factor with peak-hour load")
    out.append("-" * 50)
    for region, r in sorted(findings["correlation_with_load"].items()):
        if isinstance(r, dict):
            out.append(f"{region}: undefined ({r['error']})")
        else:
            out.append(f"{region}: r = {r:.4f}")
    out.append("")

    out.append("seasonal least-squares fits (capacity factor vs load)")
    out.append("-" * 53)
    for region, fuels in sorted(findings["seasonal_fits"].items()):
        for fuel_key, seasons in sorted(fuels.items()):
            for season in ("winter", "non_winter"):
                fit = seasons[season]
                if "error" in fit:
                    out.append(f"{region} {fuel_key} {season}: no fit ({fit['error']})")
                else:
                    out.append(
                        f"{region} {fuel_key} {season}: "
                        f"slope {fit['slope_per_gw']:.4f} per GW, "
                        f"intercept {fit['intercept']:.4f}, "
                        f"r^2 {fit['r_squared']:.4f}, n={fit['n']}"
                    )
    out.append("")

    if findings["slope_comparisons"]:
        out.append("slope comparisons between regions")
        out.append("-" * 33)
        for fuel_key, seasons in sorted(findings["slope_comparisons"].items()):
            for season in ("winter", "non_winter"):
                cmp_entry = seasons.get(season)
                if cmp_entry is None:
                    continue
                if "error" in cmp_entry:
                    out.append(f"{fuel_key} {season}: {cmp_entry['error']}")
                elif cmp_entry["larger"] == "equal":
                    out.append(f"{fuel_key} {season}: slopes equal")
                else:
                    out.append(
                        f"{fuel_key} {season}: {cmp_entry['larger']} slope larger "
                        f"by {cmp_entry['difference_per_mw'] * 1000.0:.4f} per GW"
                    )
        out.append("")

    return "\n".join(out) + "\n"


def write_findings(findings: dict, out_dir: str | Path) -> tuple[Path, Path]:
    out_dir = Path(out_dir)
    json_path = out_dir / "report.json"
    text_path = out_dir / "report.txt"
    json_path.write_text(
        json.dumps(findings, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )
    text_path.write_text(format_findings_text(findings), encoding="utf-8")
    return text_path, json_path
