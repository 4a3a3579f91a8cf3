from __future__ import annotations

import random

import pytest

from rcfkit.errors import DuplicateKeyError, SchemaError
from rcfkit.ingest import (
    format_capacity,
    format_gas_prices,
    format_generation,
    format_hourly_load,
    parse_capacity,
    parse_gas_prices,
    parse_generation,
    parse_hourly_load,
)
from rcfkit.regions import Month

GEN_HEADER = "month,plant_id,state,fuel_raw,net_generation_mwh"
CAP_HEADER = "month,plant_id,state,fuel_raw,capacity_mw"
PRICE_HEADER = "month,state,price_usd_per_mmbtu"
LOAD_HEADER = "date,hour,load_mw"


class TestParseGeneration:
    def test_basic_row(self, cfg):
        records, warnings = parse_generation(
            f"{GEN_HEADER}\n2015-07,1554,MD,Coal,158687\n", cfg
        )
        assert warnings == []
        assert len(records) == 1
        r = records[0]
        assert (r.month, r.plant_id, r.state, r.fuel) == (Month(2015, 7), 1554, "MD", "coal")
        assert r.net_generation == 158687.0

    def test_duplicate_rows_sum(self, cfg):
        records, warnings = parse_generation(
            f"{GEN_HEADER}\n2015-07,1,OH,COL,100\n2015-07,1,OH,COL,50\n", cfg
        )
        assert warnings == []
        assert len(records) == 1
        assert records[0].net_generation == 150.0

    def test_unparseable_value_warns_with_line_number(self, cfg):
        records, warnings = parse_generation(
            f"{GEN_HEADER}\n2015-07,1,OH,COL,n/a\n", cfg
        )
        assert records == []
        assert len(warnings) == 1
        assert warnings[0].line == 2
        assert "net_generation_mwh" in warnings[0].message

    def test_negative_generation_accepted(self, cfg):
        records, _ = parse_generation(f"{GEN_HEADER}\n2015-07,1,OH,COL,-1200\n", cfg)
        assert records[0].net_generation == -1200.0

    def test_raw_fuel_codes_normalized(self, cfg):
        content = (
            f"{GEN_HEADER}\n"
            "2015-07,1,OH,NG,10\n"
            "2015-07,2,OH,SUB,10\n"
            "2015-07,3,OH,NUC,10\n"
            "2015-07,4,OH,DFO,10\n"
        )
        records, _ = parse_generation(content, cfg)
        assert [r.fuel for r in sorted(records, key=lambda r: r.plant_id)] == [
            "natural_gas", "coal", "nuclear", "other",
        ]

    def test_month_outside_window_warns(self, cfg):
        records, warnings = parse_generation(
            f"{GEN_HEADER}\n2014-01,1,OH,COL,10\n", cfg
        )
        assert records == []
        assert "outside study window" in warnings[0].message

    def test_bad_state_and_bad_plant_id_warn(self, cfg):
        content = f"{GEN_HEADER}\n2015-07,1,ZZ,COL,10\n2015-07,-3,OH,COL,10\n"
        records, warnings = parse_generation(content, cfg)
        assert records == []
        assert len(warnings) == 2

    def test_missing_header_column_fatal(self, cfg):
        with pytest.raises(SchemaError, match="net_generation_mwh"):
            parse_generation("month,plant_id,state,fuel_raw\n", cfg)

    def test_unknown_header_column_fatal(self, cfg):
        with pytest.raises(SchemaError, match="extra"):
            parse_generation(f"{GEN_HEADER},extra\n", cfg)

    def test_empty_file_fatal(self, cfg):
        with pytest.raises(SchemaError, match="empty"):
            parse_generation("", cfg)
        with pytest.raises(SchemaError, match="empty"):
            parse_generation("# only a comment\n\n", cfg)

    def test_comments_and_blank_lines_skipped(self, cfg):
        content = f"# preamble\n{GEN_HEADER}\n\n# note\n2015-07,1,OH,COL,10\n"
        records, warnings = parse_generation(content, cfg)
        assert len(records) == 1 and warnings == []

    def test_header_order_insensitive(self, cfg):
        content = "state,month,net_generation_mwh,plant_id,fuel_raw\nOH,2015-07,10,1,COL\n"
        records, _ = parse_generation(content, cfg)
        assert records[0].plant_id == 1
        assert records[0].net_generation == 10.0

    def test_non_finite_rejected(self, cfg):
        records, warnings = parse_generation(f"{GEN_HEADER}\n2015-07,1,OH,COL,nan\n", cfg)
        assert records == [] and len(warnings) == 1

    def test_ragged_rows_warn(self, cfg):
        content = f"{GEN_HEADER}\n2015-07,1,OH,COL\n2015-07,1,OH,COL,10,extra\n"
        records, warnings = parse_generation(content, cfg)
        assert records == []
        assert [w.line for w in warnings] == [2, 3]


class TestParseCapacity:
    def test_basic_row(self, cfg):
        records, warnings = parse_capacity(f"{CAP_HEADER}\n2015-07,1554,MD,NG,126\n", cfg)
        assert warnings == []
        r = records[0]
        assert (r.plant_id, r.fuel, r.capacity) == (1554, "natural_gas", 126.0)

    def test_unit_rows_sum_to_plant_level(self, cfg):
        records, _ = parse_capacity(
            f"{CAP_HEADER}\n2015-07,1554,MD,COL,200\n2015-07,1554,MD,COL,223\n", cfg
        )
        assert len(records) == 1
        assert records[0].capacity == 423.0

    def test_negative_capacity_dropped_with_warning(self, cfg):
        records, warnings = parse_capacity(f"{CAP_HEADER}\n2015-07,1,OH,COL,-5\n", cfg)
        assert records == []
        assert len(warnings) == 1
        assert "negative capacity" in warnings[0].message

    def test_zero_capacity_kept(self, cfg):
        records, warnings = parse_capacity(f"{CAP_HEADER}\n2015-07,1,OH,COL,0\n", cfg)
        assert records[0].capacity == 0.0 and warnings == []


class TestParseGasPrices:
    def test_basic_row(self):
        records, warnings = parse_gas_prices(f"{PRICE_HEADER}\n2017-01,IL,3.95\n")
        assert warnings == []
        r = records[0]
        assert (r.month, r.state, r.price) == (Month(2017, 1), "IL", 3.95)

    def test_duplicate_key_fatal(self):
        content = f"{PRICE_HEADER}\n2017-01,IL,3.95\n2017-01,IL,4.00\n"
        with pytest.raises(DuplicateKeyError, match="IL"):
            parse_gas_prices(content)

    def test_non_positive_price_dropped(self):
        records, warnings = parse_gas_prices(f"{PRICE_HEADER}\n2017-02,MI,0\n")
        assert records == []
        assert len(warnings) == 1

    def test_duplicate_after_dropped_row_is_not_fatal(self):
        # the zero-price row never became a record, so no duplicate exists
        records, warnings = parse_gas_prices(
            f"{PRICE_HEADER}\n2017-02,MI,0\n2017-02,MI,3.1\n"
        )
        assert len(records) == 1 and len(warnings) == 1


class TestParseHourlyLoad:
    def test_basic_row(self):
        records, warnings = parse_hourly_load(f"{LOAD_HEADER}\n2015-07-01,14,95000\n")
        assert warnings == []
        r = records[0]
        assert (r.date.isoformat(), r.hour, r.load) == ("2015-07-01", 14, 95000.0)

    def test_hour_out_of_range_dropped(self):
        records, warnings = parse_hourly_load(f"{LOAD_HEADER}\n2015-07-01,24,95000\n")
        assert records == []
        assert "24" in warnings[0].message

    def test_full_day_parses(self):
        lines = [LOAD_HEADER] + [f"2015-07-01,{h},90000" for h in range(24)]
        records, warnings = parse_hourly_load("\n".join(lines) + "\n")
        assert len(records) == 24 and warnings == []

    def test_duplicate_hour_fatal(self):
        content = f"{LOAD_HEADER}\n2015-07-01,5,90000\n2015-07-01,5,91000\n"
        with pytest.raises(DuplicateKeyError):
            parse_hourly_load(content)

    def test_negative_load_dropped(self):
        records, warnings = parse_hourly_load(f"{LOAD_HEADER}\n2015-07-01,5,-1\n")
        assert records == [] and len(warnings) == 1


class TestRoundTrip:
    def test_generation(self, cfg):
        content = (
            f"{GEN_HEADER}\n"
            "2015-07,1554,MD,Coal,158687\n"
            "2015-07,1554,MD,NG,10096\n"
            "2015-08,1554,MD,Coal,47207.5\n"
            "2015-08,7,OH,WAT,-250.25\n"
        )
        records, _ = parse_generation(content, cfg)
        again, warnings = parse_generation(format_generation(records), cfg)
        assert again == records and warnings == []

    def test_capacity(self, cfg):
        records, _ = parse_capacity(
            f"{CAP_HEADER}\n2015-07,1554,MD,Coal,423\n2015-07,1554,MD,NG,126\n", cfg
        )
        again, _ = parse_capacity(format_capacity(records), cfg)
        assert again == records

    def test_gas_prices(self):
        records, _ = parse_gas_prices(f"{PRICE_HEADER}\n2017-01,IL,3.95\n2017-01,MI,3.63\n")
        again, _ = parse_gas_prices(format_gas_prices(records))
        assert again == records

    def test_hourly_load(self):
        records, _ = parse_hourly_load(
            f"{LOAD_HEADER}\n2015-07-01,0,88123.5\n2015-07-01,1,87500\n"
        )
        again, _ = parse_hourly_load(format_hourly_load(records))
        assert again == records


class TestAggregationOracle:
    """Totals per key must equal the brute-force sum over well-formed rows."""

    def test_random_files(self, cfg):
        rng = random.Random(917)
        for _ in range(25):
            lines = [GEN_HEADER]
            expected: dict[tuple, float] = {}
            n_bad = 0
            for _ in range(rng.randint(0, 60)):
                if rng.random() < 0.15:
                    lines.append("2015-07,1,OH,COL,bogus")
                    n_bad += 1
                    continue
                month = rng.choice(["2015-07", "2015-08", "2015-09"])
                plant = rng.randint(1, 5)
                fuel_raw = rng.choice(["COL", "NG", "NUC", "WAT"])
                value = round(rng.uniform(-100.0, 1000.0), 3)
                lines.append(f"{month},{plant},OH,{fuel_raw},{value}")
                key = (month, plant, cfg.normalize_fuel(fuel_raw))
                expected[key] = expected.get(key, 0.0) + value
            records, warnings = parse_generation("\n".join(lines) + "\n", cfg)
            assert len(warnings) == n_bad
            assert len(records) == len(expected)
            for r in records:
                key = (str(r.month), r.plant_id, r.fuel)
                assert r.net_generation == pytest.approx(expected[key], rel=1e-12)

    def test_determinism(self, cfg):
        content = f"{GEN_HEADER}\n2015-07,1,OH,COL,10\n2015-07,1,OH,COL,bogus\n"
        assert parse_generation(content, cfg) == parse_generation(content, cfg)
