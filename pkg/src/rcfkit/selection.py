"""Plant profiles and the three-way selection criteria.

A plant qualifies for a region when it sits in that region, its mean
reported monthly capacity is strictly above the configured threshold, and
it reported generation at least once. The threshold uses the mean because
capacity changes month to month while the plant set is meant to stay fixed
over the window; missing plant-months are dealt with at capacity-factor
time, not here.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import ConsistencyError
from .ingest import CapacityRecord, GenerationRecord
from .regions import Month, RegionConfig


@dataclass
class PlantProfile:
    plant_id: int
    state: str
    region: str
    capacity_by_fuel: dict[Month, dict[str, float]]  # MW per fuel per reported month
    fuels_present: frozenset[str]
    months_with_generation: frozenset[Month]
    missing_capacity: bool = False  # generation reported but no capacity in any month

    @property
    def monthly_total_capacity(self) -> dict[Month, float]:
        return {
            month: sum(fuels.values())
            for month, fuels in sorted(self.capacity_by_fuel.items())
        }


@dataclass
class SelectionResult:
    region: str
    plant_ids: frozenset[int]
    total_capacity_by_fuel: dict[str, float]  # GW at the reference month
    plant_count: int
    reference_month: Month | None = None
    note: str = ""


def mean_monthly_capacity(profile: PlantProfile) -> float:
    """Mean of total capacity over the months the plant reported any; 0 if none."""
    totals = profile.monthly_total_capacity
    if not totals:
        return 0.0
    return sum(totals.values()) / len(totals)


def build_profiles(
    gen: list[GenerationRecord],
    cap: list[CapacityRecord],
    config: RegionConfig,
) -> list[PlantProfile]:
    """One profile per plant appearing in either record set, ordered by plant id."""
    states: dict[int, str] = {}
    capacity: dict[int, dict[Month, dict[str, float]]] = {}
    gen_months: dict[int, set[Month]] = {}
    fuels: dict[int, set[str]] = {}

    def note_state(plant_id: int, state: str) -> None:
        seen = states.get(plant_id)
        if seen is None:
            states[plant_id] = state
        elif seen != state:
            raise ConsistencyError(
                f"plant {plant_id} reported in two states: {seen} and {state}"
            )

    for record in gen:
        note_state(record.plant_id, record.state)
        gen_months.setdefault(record.plant_id, set()).add(record.month)
        fuels.setdefault(record.plant_id, set()).add(record.fuel)
    for record in cap:
        note_state(record.plant_id, record.state)
        fuels.setdefault(record.plant_id, set()).add(record.fuel)
        by_month = capacity.setdefault(record.plant_id, {})
        by_fuel = by_month.setdefault(record.month, {})
        by_fuel[record.fuel] = by_fuel.get(record.fuel, 0.0) + record.capacity

    profiles = []
    for plant_id in sorted(states):
        cap_months = capacity.get(plant_id, {})
        months_gen = frozenset(gen_months.get(plant_id, set()))
        profiles.append(
            PlantProfile(
                plant_id=plant_id,
                state=states[plant_id],
                region=config.region_of(plant_id, states[plant_id]),
                capacity_by_fuel={m: dict(sorted(f.items())) for m, f in sorted(cap_months.items())},
                fuels_present=frozenset(fuels.get(plant_id, set())),
                months_with_generation=months_gen,
                missing_capacity=not cap_months and bool(months_gen),
            )
        )
    return profiles


def select_plants(
    profiles: list[PlantProfile],
    region: str,
    config: RegionConfig,
    reference_month: Month | None = None,
) -> SelectionResult:
    """Apply the selection criteria and summarize capacity by fuel.

    The fuel summary is evaluated at `reference_month` (default: last month
    of the study window) and reported in GW. An empty selection is a valid
    result carrying a diagnostic note, not an error.
    """
    if reference_month is None:
        reference_month = config.study_window[1]

    selected = [
        p
        for p in profiles
        if p.region == region
        and mean_monthly_capacity(p) > config.capacity_threshold
        and p.months_with_generation
    ]

    by_fuel: dict[str, float] = {}
    for profile in selected:
        for fuel, mw in profile.capacity_by_fuel.get(reference_month, {}).items():
            by_fuel[fuel] = by_fuel.get(fuel, 0.0) + mw / 1000.0

    note = ""
    if not selected:
        note = (
            f"no plants matched region={region} with mean capacity > "
            f"{config.capacity_threshold:g} MW and at least one generation report"
        )
    return SelectionResult(
        region=region,
        plant_ids=frozenset(p.plant_id for p in selected),
        total_capacity_by_fuel=dict(sorted(by_fuel.items())),
        plant_count=len(selected),
        reference_month=reference_month,
        note=note,
    )
