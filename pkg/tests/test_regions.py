from __future__ import annotations

import pytest

from rcfkit.errors import ConfigError
from rcfkit.regions import (
    MID_ATLANTIC,
    SOUTHERN,
    WESTERN,
    Month,
    Season,
    default_config,
    format_config,
    hours_in_month,
    load_config,
    month_range,
    parse_window,
    resolve_config,
    season_of,
)


class TestMonth:
    def test_parse_and_str(self):
        m = Month.parse("2015-07")
        assert (m.year, m.month) == (2015, 7)
        assert str(m) == "2015-07"

    def test_parse_rejects_garbage(self):
        for bad in ("2015-13", "2015/07", "201507", "2015-7", "jul-2015"):
            with pytest.raises(ValueError):
                Month.parse(bad)

    def test_ordering(self):
        assert Month(2015, 12) < Month(2016, 1)
        assert Month(2016, 2) > Month(2016, 1)

    def test_range_wraps_year(self):
        months = list(month_range(Month(2015, 11), Month(2016, 2)))
        assert [str(m) for m in months] == ["2015-11", "2015-12", "2016-01", "2016-02"]


class TestHoursInMonth:
    def test_july(self):
        assert hours_in_month(Month(2015, 7)) == 744

    def test_leap_february(self):
        assert hours_in_month(Month(2016, 2)) == 696

    def test_plain_february(self):
        assert hours_in_month(Month(2017, 2)) == 672

    @pytest.mark.parametrize("year", [2015, 2016, 2017, 2000, 1900])
    def test_yearly_sum(self, year):
        total = sum(hours_in_month(Month(year, m)) for m in range(1, 13))
        assert total in (8760, 8784)


class TestSeasons:
    def test_january_is_winter(self, cfg):
        assert season_of(Month(2016, 1), cfg) is Season.WINTER

    def test_july_is_not(self, cfg):
        assert season_of(Month(2016, 7), cfg) is Season.NON_WINTER

    def test_march_boundary(self, cfg):
        assert season_of(Month(2016, 3), cfg) is Season.NON_WINTER

    def test_partition_of_any_year(self, cfg):
        seasons = [season_of(Month(2016, m), cfg) for m in range(1, 13)]
        assert seasons.count(Season.WINTER) == 3
        assert seasons.count(Season.NON_WINTER) == 9


class TestDefaultConfig:
    def test_gas_states(self, cfg):
        assert cfg.gas_states[WESTERN] == ("IL", "MI", "OH")
        assert cfg.gas_states[MID_ATLANTIC] == ("PA", "NJ", "NY")

    def test_winter_months(self, cfg):
        assert cfg.winter_months == {12, 1, 2}

    def test_threshold_and_peak_hours(self, cfg):
        assert cfg.capacity_threshold == 200.0
        assert cfg.peak_hours == (7, 22)
        assert cfg.peak_hours[1] - cfg.peak_hours[0] + 1 == 16

    def test_study_window(self, cfg):
        assert cfg.study_window == (Month(2015, 7), Month(2017, 12))

    def test_region_lookup(self, cfg):
        assert cfg.region_of(1, "MD") == MID_ATLANTIC
        assert cfg.region_of(1, "OH") == WESTERN
        assert cfg.region_of(1, "VA") == SOUTHERN
        assert cfg.region_of(1, "CA") == "external"

    def test_fuel_normalization(self, cfg):
        assert cfg.normalize_fuel("Coal") == "coal"
        assert cfg.normalize_fuel("COL") == "coal"
        assert cfg.normalize_fuel("BIT") == "coal"
        assert cfg.normalize_fuel("NG") == "natural_gas"
        assert cfg.normalize_fuel("NUC") == "nuclear"
        assert cfg.normalize_fuel("WND") == "other"
        # normalization is idempotent so canonical files round-trip
        for fuel in ("coal", "natural_gas", "nuclear", "other"):
            assert cfg.normalize_fuel(fuel) == fuel


class TestConfigFile:
    def test_round_trip_through_format(self, tmp_path, cfg):
        path = tmp_path / "config.txt"
        path.write_text(format_config(cfg), encoding="utf-8")
        loaded = load_config(path)
        assert loaded == cfg

    def test_override_scalars(self, tmp_path):
        path = tmp_path / "config.txt"
        path.write_text(
            "capacity_threshold_mw = 350\n"
            "winter_months = 11, 12, 1, 2\n"
            "study_window = 2016-01..2016-12\n"
        )
        loaded = load_config(path)
        assert loaded.capacity_threshold == 350.0
        assert loaded.winter_months == {11, 12, 1, 2}
        assert loaded.study_window == (Month(2016, 1), Month(2016, 12))
        # untouched groups keep their defaults
        assert loaded.gas_states[WESTERN] == ("IL", "MI", "OH")

    def test_plant_region_override(self, tmp_path):
        path = tmp_path / "config.txt"
        path.write_text("plant_region.1554 = western\n")
        loaded = load_config(path)
        assert loaded.region_of(1554, "MD") == WESTERN
        assert loaded.region_of(1555, "MD") == MID_ATLANTIC

    def test_state_in_two_regions_rejected(self, tmp_path):
        path = tmp_path / "config.txt"
        path.write_text("region.western = OH, PA\nregion.mid_atlantic = PA, NJ\n")
        with pytest.raises(ConfigError, match="PA"):
            load_config(path)

    def test_unknown_key_rejected(self, tmp_path):
        path = tmp_path / "config.txt"
        path.write_text("capacity_treshold = 200\n")
        with pytest.raises(ConfigError, match="unknown key"):
            load_config(path)

    def test_comments_and_blanks_ignored(self, tmp_path):
        path = tmp_path / "config.txt"
        path.write_text("# a comment\n\ncapacity_threshold_mw = 250\n")
        assert load_config(path).capacity_threshold == 250.0

    def test_env_var_pickup(self, tmp_path, monkeypatch):
        path = tmp_path / "config.txt"
        path.write_text("capacity_threshold_mw = 275\n")
        monkeypatch.setenv("RCFKIT_CONFIG", str(path))
        assert resolve_config(None).capacity_threshold == 275.0

    def test_resolve_without_env(self, monkeypatch):
        monkeypatch.delenv("RCFKIT_CONFIG", raising=False)
        assert resolve_config(None) == default_config()


class TestWindowParsing:
    def test_ok(self):
        assert parse_window("2015-07..2017-12") == (Month(2015, 7), Month(2017, 12))

    def test_reversed_rejected(self):
        with pytest.raises(ConfigError):
            parse_window("2017-12..2015-07")

    def test_malformed_rejected(self):
        with pytest.raises(ConfigError):
            parse_window("2015-07-2017-12")
