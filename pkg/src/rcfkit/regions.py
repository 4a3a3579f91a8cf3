"""Region/season configuration and the calendar arithmetic shared by the metrics.

The shipped defaults assign whole states to market regions. The source
regions are defined by load zones that split some states, so the state-level
mapping is an approximation; override it (or pin individual plants with
``plant_region``) through a config file when exact membership matters.
"""

from __future__ import annotations

import calendar
import enum
import os
import re
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Iterator

from .errors import ConfigError

WESTERN = "western"
MID_ATLANTIC = "mid_atlantic"
SOUTHERN = "southern"
EXTERNAL = "external"
REGIONS = (WESTERN, MID_ATLANTIC, SOUTHERN, EXTERNAL)

COAL = "coal"
NATURAL_GAS = "natural_gas"
NUCLEAR = "nuclear"
OTHER = "other"
FUELS = (COAL, NATURAL_GAS, NUCLEAR, OTHER)

# 50 states plus the District of Columbia.
STATE_CODES = frozenset(
    """AL AK AZ AR CA CO CT DE DC FL GA HI ID IL IN IA KS KY LA ME MD MA MI MN
    MS MO MT NE NV NH NJ NM NY NC ND OH OK OR PA RI SC SD TN TX UT VT VA WA WV
    WI WY""".split()
)

CONFIG_PATH_ENV_VAR = "RCFKIT_CONFIG"

_MONTH_RE = re.compile(r"^(\d{4})-(\d{2})$")


@dataclass(frozen=True, order=True)
class Month:
    """A calendar year-month, e.g. 2015-07."""

    year: int
    month: int

    def __post_init__(self) -> None:
        if not 1 <= self.month <= 12:
            raise ValueError(f"month number out of range: {self.month}")

    @classmethod
    def parse(cls, text: str) -> "Month":
        m = _MONTH_RE.match(text.strip())
        if not m:
            raise ValueError(f"not a YYYY-MM month: {text!r}")
        return cls(int(m.group(1)), int(m.group(2)))

    def __str__(self) -> str:
        return f"{self.year:04d}-{self.month:02d}"

    def next(self) -> "Month":
        if self.month == 12:
            return Month(self.year + 1, 1)
        return Month(self.year, self.month + 1)


def month_range(first: Month, last: Month) -> Iterator[Month]:
    """Yield months from first through last inclusive."""
    m = first
    while m <= last:
        yield m
        m = m.next()


def hours_in_month(month: Month) -> int:
    """Nominal generating hours in a month: days x 24, Gregorian calendar."""
    return calendar.monthrange(month.year, month.month)[1] * 24


class Season(enum.Enum):
    WINTER = "winter"
    NON_WINTER = "non_winter"


@dataclass(frozen=True)
class RegionConfig:
    """Immutable pipeline configuration; shareable across concurrent readers."""

    region_of_state: dict[str, str]
    gas_states: dict[str, tuple[str, ...]]
    fuel_map: dict[str, str]
    winter_months: frozenset[int]
    capacity_threshold: float  # MW, strict lower bound for plant selection
    peak_hours: tuple[int, int]  # inclusive hour-beginning range
    study_window: tuple[Month, Month]
    plant_region: dict[int, str] = field(default_factory=dict)

    def __post_init__(self) -> None:
        for state, region in self.region_of_state.items():
            if state not in STATE_CODES:
                raise ConfigError(f"unknown state code in region map: {state!r}")
            if region not in REGIONS:
                raise ConfigError(f"unknown region label: {region!r}")
        for region in (WESTERN, MID_ATLANTIC):
            if not self.gas_states.get(region):
                raise ConfigError(f"gas_states for {region} must be non-empty")
        for region, states in self.gas_states.items():
            if region not in REGIONS:
                raise ConfigError(f"unknown region label in gas_states: {region!r}")
            for state in states:
                if state not in STATE_CODES:
                    raise ConfigError(f"unknown state code in gas_states: {state!r}")
        if not self.winter_months <= set(range(1, 13)):
            raise ConfigError(f"winter_months outside 1..12: {sorted(self.winter_months)}")
        lo, hi = self.peak_hours
        if not (0 <= lo <= hi <= 23):
            raise ConfigError(f"peak_hours range invalid: {self.peak_hours}")
        if self.capacity_threshold <= 0:
            raise ConfigError(f"capacity_threshold must be > 0, got {self.capacity_threshold}")
        first, last = self.study_window
        if first > last:
            raise ConfigError(f"study_window reversed: {first}..{last}")
        for region in self.plant_region.values():
            if region not in REGIONS:
                raise ConfigError(f"unknown region label in plant_region: {region!r}")

    def region_of(self, plant_id: int, state: str) -> str:
        """Region for a plant: explicit override first, else its state's region."""
        override = self.plant_region.get(plant_id)
        if override is not None:
            return override
        return self.region_of_state.get(state, EXTERNAL)

    def normalize_fuel(self, raw: str) -> str:
        """Map a raw fuel code onto {coal, natural_gas, nuclear, other}."""
        code = raw.strip().upper()
        if code in self.fuel_map:
            return self.fuel_map[code]
        low = raw.strip().lower()
        if low in FUELS:
            return low
        return OTHER

    def season_of_number(self, month_number: int) -> Season:
        if month_number in self.winter_months:
            return Season.WINTER
        return Season.NON_WINTER

    def in_window(self, month: Month) -> bool:
        first, last = self.study_window
        return first <= month <= last


def season_of(month: Month, config: RegionConfig) -> Season:
    """Winter iff the month number is in the configured winter set."""
    return config.season_of_number(month.month)


def default_config() -> RegionConfig:
    """The shipped defaults for the 2015-07..2017-12 study window."""
    region_of_state = {}
    for state in ("IL", "IN", "MI", "OH", "KY", "WV", "TN"):
        region_of_state[state] = WESTERN
    for state in ("PA", "NJ", "MD", "DE", "DC"):
        region_of_state[state] = MID_ATLANTIC
    for state in ("VA", "NC"):
        region_of_state[state] = SOUTHERN
    return RegionConfig(
        region_of_state=region_of_state,
        gas_states={
            WESTERN: ("IL", "MI", "OH"),
            MID_ATLANTIC: ("PA", "NJ", "NY"),
        },
        fuel_map={
            "COL": COAL,
            "BIT": COAL,
            "SUB": COAL,
            "LIG": COAL,
            "NG": NATURAL_GAS,
            "NUC": NUCLEAR,
        },
        winter_months=frozenset({12, 1, 2}),
        capacity_threshold=200.0,
        peak_hours=(7, 22),
        study_window=(Month(2015, 7), Month(2017, 12)),
    )


def parse_window(text: str) -> tuple[Month, Month]:
    """Parse a 'YYYY-MM..YYYY-MM' window string."""
    parts = text.split("..")
    if len(parts) != 2:
        raise ConfigError(f"window must look like 2015-07..2017-12, got {text!r}")
    try:
        first, last = Month.parse(parts[0]), Month.parse(parts[1])
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    if first > last:
        raise ConfigError(f"window reversed: {text!r}")
    return first, last


def _split_list(value: str) -> list[str]:
    return [item.strip() for item in value.split(",") if item.strip()]


def load_config(path: str | Path) -> RegionConfig:
    """Load a key=value config file layered over the defaults.

    Accepted keys (see `format_config` for the full default rendering):
      region.<label>, gas_states.<label>, fuel.<RAW_CODE>, plant_region.<id>,
      winter_months, capacity_threshold_mw, peak_hours, study_window.

    Assigning any region.* key replaces the whole state map; likewise for
    gas_states.* and fuel.*, so partial overrides of those groups restate
    the group. Scalar keys override individually.
    """
    base = default_config()
    region_map: dict[str, str] = {}
    gas_map: dict[str, tuple[str, ...]] = {}
    fuel_map: dict[str, str] = {}
    plant_map: dict[int, str] = {}
    scalars: dict[str, object] = {}
    saw_region = saw_gas = saw_fuel = False

    text = Path(path).read_text(encoding="utf-8")
    for lineno, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"{path} line {lineno}: expected key = value, got {line!r}")
        key, _, value = line.partition("=")
        key, value = key.strip(), value.strip()

        if key.startswith("region."):
            saw_region = True
            label = key[len("region."):]
            if label not in (WESTERN, MID_ATLANTIC, SOUTHERN):
                raise ConfigError(f"{path} line {lineno}: unknown region label {label!r}")
            for state in _split_list(value):
                state = state.upper()
                if state in region_map:
                    raise ConfigError(
                        f"{path} line {lineno}: state {state} assigned to both "
                        f"{region_map[state]} and {label}"
                    )
                region_map[state] = label
        elif key.startswith("gas_states."):
            saw_gas = True
            label = key[len("gas_states."):]
            gas_map[label] = tuple(s.upper() for s in _split_list(value))
        elif key.startswith("fuel."):
            saw_fuel = True
            fuel_map[key[len("fuel."):].upper()] = value.lower()
        elif key.startswith("plant_region."):
            try:
                plant_id = int(key[len("plant_region."):])
            except ValueError as exc:
                raise ConfigError(f"{path} line {lineno}: bad plant id in {key!r}") from exc
            plant_map[plant_id] = value
        elif key == "winter_months":
            try:
                scalars["winter_months"] = frozenset(int(v) for v in _split_list(value))
            except ValueError as exc:
                raise ConfigError(f"{path} line {lineno}: bad winter_months {value!r}") from exc
        elif key == "capacity_threshold_mw":
            try:
                scalars["capacity_threshold"] = float(value)
            except ValueError as exc:
                raise ConfigError(f"{path} line {lineno}: bad threshold {value!r}") from exc
        elif key == "peak_hours":
            m = re.match(r"^(\d+)\s*-\s*(\d+)$", value)
            if not m:
                raise ConfigError(f"{path} line {lineno}: peak_hours must be like 7-22")
            scalars["peak_hours"] = (int(m.group(1)), int(m.group(2)))
        elif key == "study_window":
            scalars["study_window"] = parse_window(value)
        else:
            raise ConfigError(f"{path} line {lineno}: unknown key {key!r}")

    cfg = replace(
        base,
        region_of_state=region_map if saw_region else base.region_of_state,
        gas_states=gas_map if saw_gas else base.gas_states,
        fuel_map=fuel_map if saw_fuel else base.fuel_map,
        plant_region=plant_map,
        **scalars,
    )
    return cfg


def resolve_config(path: str | Path | None) -> RegionConfig:
    """Config from an explicit path, else $RCFKIT_CONFIG, else the defaults."""
    if path is None:
        path = os.environ.get(CONFIG_PATH_ENV_VAR) or None
    if path is None:
        return default_config()
    return load_config(path)


def format_config(config: RegionConfig) -> str:
    """Render a config in the same key=value schema `load_config` reads."""
    lines = []
    by_region: dict[str, list[str]] = {}
    for state, region in config.region_of_state.items():
        by_region.setdefault(region, []).append(state)
    for region in (WESTERN, MID_ATLANTIC, SOUTHERN):
        states = sorted(by_region.get(region, []))
        if states:
            lines.append(f"region.{region} = {', '.join(states)}")
    for region in sorted(config.gas_states):
        lines.append(f"gas_states.{region} = {', '.join(config.gas_states[region])}")
    for code in sorted(config.fuel_map):
        lines.append(f"fuel.{code} = {config.fuel_map[code]}")
    for plant_id in sorted(config.plant_region):
        lines.append(f"plant_region.{plant_id} = {config.plant_region[plant_id]}")
    lines.append(f"winter_months = {', '.join(str(m) for m in sorted(config.winter_months))}")
    lines.append(f"capacity_threshold_mw = {config.capacity_threshold:g}")
    lines.append(f"peak_hours = {config.peak_hours[0]}-{config.peak_hours[1]}")
    lines.append(f"study_window = {config.study_window[0]}..{config.study_window[1]}")
    return "\n".join(lines) + "\n"
