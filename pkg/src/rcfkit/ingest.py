"""Parsers for the four canonical input datasets.

All inputs are UTF-8 comma-delimited text: first non-comment row is the
header, `#`-prefixed lines are comments. Rows that fail a field check are
skipped with a warning carrying the 1-based physical line number; smaller
stations are known to report patchily, so partial data is the normal
regime and never aborts a parse. Structural problems (bad header, empty
file, duplicate keys in non-additive data) are fatal.
"""

from __future__ import annotations

import csv
import datetime as dt
import math
from dataclasses import dataclass
from typing import Iterable

from .errors import DuplicateKeyError, SchemaError
from .regions import STATE_CODES, Month, RegionConfig

GENERATION_COLUMNS = ("month", "plant_id", "state", "fuel_raw", "net_generation_mwh")
CAPACITY_COLUMNS = ("month", "plant_id", "state", "fuel_raw", "capacity_mw")
GAS_PRICE_COLUMNS = ("month", "state", "price_usd_per_mmbtu")
HOURLY_LOAD_COLUMNS = ("date", "hour", "load_mw")


@dataclass(frozen=True)
class GenerationRecord:
    month: Month
    plant_id: int
    state: str
    fuel: str
    net_generation: float  # MWh; negative is real (pumped storage, station service)


@dataclass(frozen=True)
class CapacityRecord:
    month: Month
    plant_id: int
    state: str
    fuel: str
    capacity: float  # MW, >= 0


@dataclass(frozen=True)
class GasPriceRecord:
    month: Month
    state: str
    price: float  # $/MMBtu, > 0


@dataclass(frozen=True)
class HourlyLoadRecord:
    date: dt.date
    hour: int  # hour-beginning, 0..23
    load: float  # MW, >= 0


@dataclass(frozen=True)
class IngestWarning:
    line: int
    message: str

    def __str__(self) -> str:
        return f"line {self.line}: {self.message}"


def _data_rows(content: str | Iterable[str], columns: tuple[str, ...]):
    """Yield (line_number, field_dict) per data row after header validation."""
    if isinstance(content, str):
        lines: Iterable[str] = content.splitlines()
    else:
        lines = content

    header_index: dict[str, int] | None = None
    n_header_cols = 0
    for lineno, raw in enumerate(lines, start=1):
        line = raw.rstrip("\r\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        cells = next(csv.reader([line]))
        if header_index is None:
            names = [c.strip().lower() for c in cells]
            missing = [c for c in columns if c not in names]
            if missing:
                raise SchemaError(f"header missing column(s): {', '.join(missing)}")
            unknown = [n for n in names if n not in columns]
            if unknown:
                raise SchemaError(f"header has unknown column(s): {', '.join(unknown)}")
            if len(set(names)) != len(names):
                raise SchemaError("header has duplicate columns")
            header_index = {name: i for i, name in enumerate(names)}
            n_header_cols = len(names)
            continue
        yield lineno, cells, header_index, n_header_cols

    if header_index is None:
        raise SchemaError("empty file: no header row found")


def _finite_float(text: str) -> float:
    value = float(text)
    if not math.isfinite(value):
        raise ValueError(f"non-finite value {text!r}")
    return value


class _RowReader:
    """Field extraction for one data row, accumulating the first failure."""

    def __init__(self, cells: list[str], index: dict[str, int], n_cols: int):
        if len(cells) != n_cols:
            raise ValueError(f"expected {n_cols} fields, found {len(cells)}")
        self.cells = cells
        self.index = index

    def text(self, column: str) -> str:
        return self.cells[self.index[column]].strip()

    def month(self, column: str) -> Month:
        return Month.parse(self.text(column))

    def date(self, column: str) -> dt.date:
        return dt.date.fromisoformat(self.text(column))

    def plant_id(self, column: str) -> int:
        raw = self.text(column)
        value = int(raw)
        if value <= 0:
            raise ValueError(f"plant_id must be positive, got {raw}")
        return value

    def state(self, column: str) -> str:
        raw = self.text(column).upper()
        if raw not in STATE_CODES:
            raise ValueError(f"unrecognized state code {raw!r}")
        return raw

    def number(self, column: str) -> float:
        raw = self.text(column)
        try:
            return _finite_float(raw)
        except ValueError:
            raise ValueError(f"unparseable {column} {raw!r}") from None


def parse_generation(
    content: str | Iterable[str], config: RegionConfig
) -> tuple[list[GenerationRecord], list[IngestWarning]]:
    """Parse generation rows, summing duplicates per (month, plant, fuel)."""
    totals: dict[tuple[Month, int, str], float] = {}
    states: dict[tuple[Month, int, str], str] = {}
    warnings: list[IngestWarning] = []
    for lineno, cells, index, n_cols in _data_rows(content, GENERATION_COLUMNS):
        try:
            row = _RowReader(cells, index, n_cols)
            month = row.month("month")
            plant_id = row.plant_id("plant_id")
            state = row.state("state")
            fuel = config.normalize_fuel(row.text("fuel_raw"))
            net_generation = row.number("net_generation_mwh")
            if not config.in_window(month):
                raise ValueError(f"month {month} outside study window")
        except ValueError as exc:
            warnings.append(IngestWarning(lineno, str(exc)))
            continue
        key = (month, plant_id, fuel)
        totals[key] = totals.get(key, 0.0) + net_generation
        states.setdefault(key, state)
    records = [
        GenerationRecord(month, plant_id, states[(month, plant_id, fuel)], fuel, total)
        for (month, plant_id, fuel), total in sorted(totals.items())
    ]
    return records, warnings


def parse_capacity(
    content: str | Iterable[str], config: RegionConfig
) -> tuple[list[CapacityRecord], list[IngestWarning]]:
    """Parse capacity rows; unit-level rows sum to plant-fuel-month level."""
    totals: dict[tuple[Month, int, str], float] = {}
    states: dict[tuple[Month, int, str], str] = {}
    warnings: list[IngestWarning] = []
    for lineno, cells, index, n_cols in _data_rows(content, CAPACITY_COLUMNS):
        try:
            row = _RowReader(cells, index, n_cols)
            month = row.month("month")
            plant_id = row.plant_id("plant_id")
            state = row.state("state")
            fuel = config.normalize_fuel(row.text("fuel_raw"))
            capacity = row.number("capacity_mw")
            if capacity < 0:
                raise ValueError(f"negative capacity {capacity:g}")
            if not config.in_window(month):
                raise ValueError(f"month {month} outside study window")
        except ValueError as exc:
            warnings.append(IngestWarning(lineno, str(exc)))
            continue
        key = (month, plant_id, fuel)
        totals[key] = totals.get(key, 0.0) + capacity
        states.setdefault(key, state)
    records = [
        CapacityRecord(month, plant_id, states[(month, plant_id, fuel)], fuel, total)
        for (month, plant_id, fuel), total in sorted(totals.items())
    ]
    return records, warnings


def parse_gas_prices(
    content: str | Iterable[str],
) -> tuple[list[GasPriceRecord], list[IngestWarning]]:
    """Parse state gas prices; duplicate (month, state) is fatal (not additive)."""
    prices: dict[tuple[Month, str], float] = {}
    warnings: list[IngestWarning] = []
    for lineno, cells, index, n_cols in _data_rows(content, GAS_PRICE_COLUMNS):
        try:
            row = _RowReader(cells, index, n_cols)
            month = row.month("month")
            state = row.state("state")
            price = row.number("price_usd_per_mmbtu")
            if price <= 0:
                raise ValueError(f"non-positive price {price:g}")
        except ValueError as exc:
            warnings.append(IngestWarning(lineno, str(exc)))
            continue
        key = (month, state)
        if key in prices:
            raise DuplicateKeyError(
                f"line {lineno}: duplicate gas price for {state} {month}"
            )
        prices[key] = price
    records = [
        GasPriceRecord(month, state, price)
        for (month, state), price in sorted(prices.items())
    ]
    return records, warnings


def parse_hourly_load(
    content: str | Iterable[str],
) -> tuple[list[HourlyLoadRecord], list[IngestWarning]]:
    """Parse hourly system loads; duplicate (date, hour) is fatal."""
    loads: dict[tuple[dt.date, int], float] = {}
    warnings: list[IngestWarning] = []
    for lineno, cells, index, n_cols in _data_rows(content, HOURLY_LOAD_COLUMNS):
        try:
            row = _RowReader(cells, index, n_cols)
            date = row.date("date")
            hour = int(row.text("hour"))
            if not 0 <= hour <= 23:
                raise ValueError(f"hour {hour} outside 0..23")
            load = row.number("load_mw")
            if load < 0:
                raise ValueError(f"negative load {load:g}")
        except ValueError as exc:
            warnings.append(IngestWarning(lineno, str(exc)))
            continue
        key = (date, hour)
        if key in loads:
            raise DuplicateKeyError(f"line {lineno}: duplicate load for {date} hour {hour}")
        loads[key] = load
    records = [
        HourlyLoadRecord(date, hour, load) for (date, hour), load in sorted(loads.items())
    ]
    return records, warnings


def _format_number(value: float) -> str:
    # repr keeps full double precision; integers print without the trailing .0
    if value == int(value) and abs(value) < 1e15:
        return str(int(value))
    return repr(value)


def format_generation(records: Iterable[GenerationRecord]) -> str:
    lines = [",".join(GENERATION_COLUMNS)]
    for r in records:
        lines.append(
            f"{r.month},{r.plant_id},{r.state},{r.fuel},{_format_number(r.net_generation)}"
        )
    return "\n".join(lines) + "\n"


def format_capacity(records: Iterable[CapacityRecord]) -> str:
    lines = [",".join(CAPACITY_COLUMNS)]
    for r in records:
        lines.append(f"{r.month},{r.plant_id},{r.state},{r.fuel},{_format_number(r.capacity)}")
    return "\n".join(lines) + "\n"


def format_gas_prices(records: Iterable[GasPriceRecord]) -> str:
    lines = [",".join(GAS_PRICE_COLUMNS)]
    for r in records:
        lines.append(f"{r.month},{r.state},{_format_number(r.price)}")
    return "\n".join(lines) + "\n"


def format_hourly_load(records: Iterable[HourlyLoadRecord]) -> str:
    lines = [",".join(HOURLY_LOAD_COLUMNS)]
    for r in records:
        lines.append(f"{r.date.isoformat()},{r.hour},{_format_number(r.load)}")
    return "\n".join(lines) + "\n"
