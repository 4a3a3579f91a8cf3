"""The three monthly series: regional capacity factor, peak-hour load, gas price.

All arithmetic is double precision with a fixed summation order (plant id,
then fuel, then state), so results are bit-identical regardless of input
ordering. Values are kept at full precision here; rounding happens only in
the report layer.
"""

from __future__ import annotations

import datetime as dt
from dataclasses import dataclass, field

from .errors import ConfigError
from .ingest import CapacityRecord, GasPriceRecord, GenerationRecord, HourlyLoadRecord
from .regions import (
    COAL,
    NATURAL_GAS,
    Month,
    RegionConfig,
    hours_in_month,
    month_range,
)
from .selection import SelectionResult

UNIT_DIMENSIONLESS = "dimensionless"
UNIT_MW = "MW"
UNIT_USD_PER_MMBTU = "USD_per_MMBtu"

FOSSIL_FUELS = frozenset({COAL, NATURAL_GAS})

# Capacity factors outside this band are physically suspicious: sustained
# values above 1 indicate capacity under-reporting, below -0.05 something
# worse than pumped-storage consumption.
RCF_PLAUSIBLE_LOW = -0.05
RCF_PLAUSIBLE_HIGH = 1.05


@dataclass(frozen=True)
class SeriesPoint:
    month: Month
    value: float
    coverage: int  # contributing records (plant-fuel pairs, hours, or states)
    warnings: tuple[str, ...] = ()


@dataclass
class MonthlySeries:
    label: str
    unit: str
    points: list[SeriesPoint]
    warnings: list[str] = field(default_factory=list)  # series-level, e.g. omitted months

    def __post_init__(self) -> None:
        months = [p.month for p in self.points]
        if any(a >= b for a, b in zip(months, months[1:])):
            raise ValueError(f"series {self.label}: months not strictly increasing")

    def __len__(self) -> int:
        return len(self.points)

    def months(self) -> list[Month]:
        return [p.month for p in self.points]

    def values(self) -> list[float]:
        return [p.value for p in self.points]

    def as_dict(self) -> dict[Month, float]:
        return {p.month: p.value for p in self.points}

    def warning_count(self) -> int:
        return len(self.warnings) + sum(len(p.warnings) for p in self.points)


@dataclass(frozen=True)
class RcfQuery:
    region: str
    fuel_filter: frozenset[str] | None = None  # None means all fuels
    window: tuple[Month, Month] | None = None  # None means the study window

    @classmethod
    def of(
        cls,
        region: str,
        fuels: str | frozenset[str] | set[str] | None = None,
        window: tuple[Month, Month] | None = None,
    ) -> "RcfQuery":
        if isinstance(fuels, str):
            fuels = frozenset({fuels})
        elif fuels is not None:
            fuels = frozenset(fuels)
        return cls(region=region, fuel_filter=fuels, window=window)


def _fuel_suffix(fuel_filter: frozenset[str] | None) -> str:
    if fuel_filter is None:
        return ""
    if fuel_filter == FOSSIL_FUELS:
        return "_fossil"
    return "_" + "-".join(sorted(fuel_filter))


def compute_rcf(
    selection: SelectionResult,
    gen: list[GenerationRecord],
    cap: list[CapacityRecord],
    query: RcfQuery,
    config: RegionConfig,
) -> MonthlySeries:
    """Monthly fleet capacity factor over the selected plants.

    For month M: sum of net generation divided by (sum of capacity x hours
    in M). A plant-fuel contributes only when both its generation and
    capacity records exist for M; one-sided plant-fuels are excluded from
    numerator and denominator and surface in a per-month diagnostic.
    Months with a zero denominator are omitted with a warning.
    """
    window = query.window or config.study_window
    lo, hi = window
    first, last = config.study_window
    if lo < first or hi > last:
        raise ValueError(
            f"query window {lo}..{hi} outside study window {first}..{last}"
        )

    plant_ids = sorted(selection.plant_ids)
    gen_idx: dict[tuple[Month, int], dict[str, float]] = {}
    for r in gen:
        if r.plant_id in selection.plant_ids:
            fuels = gen_idx.setdefault((r.month, r.plant_id), {})
            fuels[r.fuel] = fuels.get(r.fuel, 0.0) + r.net_generation
    cap_idx: dict[tuple[Month, int], dict[str, float]] = {}
    for r in cap:
        if r.plant_id in selection.plant_ids:
            fuels = cap_idx.setdefault((r.month, r.plant_id), {})
            fuels[r.fuel] = fuels.get(r.fuel, 0.0) + r.capacity

    label = f"rcf_{query.region}{_fuel_suffix(query.fuel_filter)}"
    points: list[SeriesPoint] = []
    series_warnings: list[str] = []
    if not plant_ids:
        series_warnings.append("selection is empty; no capacity factors computed")

    for month in month_range(lo, hi):
        netgen_total = 0.0
        capacity_total = 0.0
        paired = 0
        excluded = 0
        for plant_id in plant_ids:
            gen_fuels = gen_idx.get((month, plant_id), {})
            cap_fuels = cap_idx.get((month, plant_id), {})
            for fuel in sorted(set(gen_fuels) | set(cap_fuels)):
                if query.fuel_filter is not None and fuel not in query.fuel_filter:
                    continue
                if fuel in gen_fuels and fuel in cap_fuels:
                    netgen_total += gen_fuels[fuel]
                    capacity_total += cap_fuels[fuel]
                    paired += 1
                else:
                    excluded += 1
        if capacity_total <= 0.0:
            if paired or excluded:
                series_warnings.append(f"{month}: zero capacity denominator; month omitted")
            else:
                series_warnings.append(f"{month}: no generation/capacity pairs; month omitted")
            continue
        value = netgen_total / (capacity_total * hours_in_month(month))
        point_warnings: list[str] = []
        if excluded:
            point_warnings.append(
                f"{excluded} plant-fuel pair(s) missing generation or capacity; excluded"
            )
        if not RCF_PLAUSIBLE_LOW <= value <= RCF_PLAUSIBLE_HIGH:
            point_warnings.append(
                f"capacity factor {value:.4f} outside plausible range "
                f"[{RCF_PLAUSIBLE_LOW}, {RCF_PLAUSIBLE_HIGH}]"
            )
        points.append(SeriesPoint(month, value, paired, tuple(point_warnings)))

    return MonthlySeries(label, UNIT_DIMENSIONLESS, points, series_warnings)


def compute_monthly_load(
    load: list[HourlyLoadRecord],
    window: tuple[Month, Month],
    config: RegionConfig,
) -> MonthlySeries:
    """Average peak-hour system load per month.

    The nominal average is over 16 peak hours x days-in-month; when peak
    records are missing the month averages over the records actually
    present, and the coverage count makes the shortfall auditable. Days
    with incomplete peak coverage are flagged on the point.
    """
    lo, hi = window
    peak_lo, peak_hi = config.peak_hours
    peak_len = peak_hi - peak_lo + 1

    totals: dict[Month, float] = {}
    counts: dict[Month, int] = {}
    day_counts: dict[Month, dict[dt.date, int]] = {}
    for r in load:
        if not peak_lo <= r.hour <= peak_hi:
            continue
        month = Month(r.date.year, r.date.month)
        if not lo <= month <= hi:
            continue
        totals[month] = totals.get(month, 0.0) + r.load
        counts[month] = counts.get(month, 0) + 1
        by_day = day_counts.setdefault(month, {})
        by_day[r.date] = by_day.get(r.date, 0) + 1

    points: list[SeriesPoint] = []
    series_warnings: list[str] = []
    for month in month_range(lo, hi):
        n = counts.get(month, 0)
        if n == 0:
            series_warnings.append(f"{month}: no peak-hour load records; month omitted")
            continue
        expected = peak_len * (hours_in_month(month) // 24)
        value = totals[month] / n
        point_warnings: list[str] = []
        if n < expected:
            short_days = sum(
                1 for c in day_counts[month].values() if c < peak_len
            ) + ((hours_in_month(month) // 24) - len(day_counts[month]))
            point_warnings.append(
                f"{expected - n} of {expected} peak-hour records missing "
                f"({short_days} day(s) incomplete); averaged over present records"
            )
        points.append(SeriesPoint(month, value, n, tuple(point_warnings)))
    return MonthlySeries("system_load", UNIT_MW, points, series_warnings)


def compute_regional_gas_price(
    prices: list[GasPriceRecord],
    region: str,
    window: tuple[Month, Month],
    config: RegionConfig,
) -> MonthlySeries:
    """Unweighted mean of the region's configured state prices per month."""
    states = config.gas_states.get(region)
    if not states:
        raise ConfigError(f"no gas price states configured for region {region!r}")

    by_key: dict[tuple[Month, str], float] = {}
    for r in prices:
        by_key[(r.month, r.state)] = r.price

    lo, hi = window
    points: list[SeriesPoint] = []
    series_warnings: list[str] = []
    for month in month_range(lo, hi):
        present = [(s, by_key[(month, s)]) for s in sorted(states) if (month, s) in by_key]
        if not present:
            series_warnings.append(f"{month}: no {region} state prices; month omitted")
            continue
        value = sum(p for _, p in present) / len(present)
        point_warnings: list[str] = []
        if len(present) < len(states):
            missing = sorted(set(states) - {s for s, _ in present})
            point_warnings.append(
                f"missing price(s) for {', '.join(missing)}; averaged over present states"
            )
        points.append(SeriesPoint(month, value, len(present), tuple(point_warnings)))
    return MonthlySeries(f"gas_price_{region}", UNIT_USD_PER_MMBTU, points, series_warnings)
