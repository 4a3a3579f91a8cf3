from __future__ import annotations

import pytest

from rcfkit.analysis import AlignedPair, AlignedPairs
from rcfkit.charts import (
    CHART_DUAL_AXIS,
    CHART_SCATTER_FIT,
    ChartSpec,
    PanelSpec,
    emit_chart,
)
from rcfkit.errors import ChartError
from rcfkit.metrics import MonthlySeries, SeriesPoint
from rcfkit.regions import Month, month_range


def mk_series(label, unit, n=6, scale=1.0):
    months = list(month_range(Month(2016, 1), Month(2016, 12)))[:n]
    points = [SeriesPoint(m, scale * (i + 1), 1) for i, m in enumerate(months)]
    return MonthlySeries(label, unit, points)


def mk_pairs(n=6):
    months = list(month_range(Month(2016, 1), Month(2016, 12)))[:n]
    return AlignedPairs("load", "rcf", [
        AlignedPair(m, 80000.0 + 1000.0 * i, 0.4 + 0.01 * i) for i, m in enumerate(months)
    ])


DUAL = ChartSpec(
    kind=CHART_DUAL_AXIS,
    title="rcf and load",
    x_label="month",
    y_label="capacity factor",
    y2_label="MW",
    left_series=("rcf_a", "rcf_b"),
    right_series=("load",),
)


def dual_series():
    return {
        "rcf_a": mk_series("rcf_a", "dimensionless", scale=0.1),
        "rcf_b": mk_series("rcf_b", "dimensionless", scale=0.08),
        "load": mk_series("load", "MW", scale=10000.0),
    }


class TestDualAxis:
    def test_writes_svg(self, tmp_path):
        path = emit_chart(DUAL, dual_series(), tmp_path / "c.svg")
        text = path.read_text()
        assert text.lstrip().startswith("<?xml")
        assert "</svg>" in text

    def test_byte_determinism(self, tmp_path):
        a = emit_chart(DUAL, dual_series(), tmp_path / "a.svg")
        b = emit_chart(DUAL, dual_series(), tmp_path / "b.svg")
        assert a.read_bytes() == b.read_bytes()

    def test_no_date_metadata(self, tmp_path):
        path = emit_chart(DUAL, dual_series(), tmp_path / "c.svg")
        assert "dc:date" not in path.read_text()

    def test_empty_series_named_in_error(self, tmp_path):
        series = dual_series()
        series["load"] = MonthlySeries("load", "MW", [])
        with pytest.raises(ChartError, match="load"):
            emit_chart(DUAL, series, tmp_path / "c.svg")

    def test_unknown_series_rejected(self, tmp_path):
        series = dual_series()
        del series["rcf_b"]
        with pytest.raises(ChartError, match="rcf_b"):
            emit_chart(DUAL, series, tmp_path / "c.svg")

    def test_mixed_left_units_rejected(self, tmp_path):
        series = dual_series()
        series["rcf_b"] = mk_series("rcf_b", "MW")
        with pytest.raises(ChartError, match="two unit systems"):
            emit_chart(DUAL, series, tmp_path / "c.svg")

    def test_same_units_both_sides_rejected(self, tmp_path):
        series = dual_series()
        series["load"] = mk_series("load", "dimensionless")
        with pytest.raises(ChartError, match="two unit systems"):
            emit_chart(DUAL, series, tmp_path / "c.svg")

    def test_single_point_series(self, tmp_path):
        series = {
            "rcf_a": mk_series("rcf_a", "dimensionless", n=1),
            "load": mk_series("load", "MW", n=1, scale=90000.0),
        }
        spec = ChartSpec(
            kind=CHART_DUAL_AXIS, title="one point", x_label="month",
            y_label="capacity factor", y2_label="MW",
            left_series=("rcf_a",), right_series=("load",),
        )
        path = emit_chart(spec, series, tmp_path / "c.svg")
        assert path.stat().st_size > 0


SCATTER = ChartSpec(
    kind=CHART_SCATTER_FIT,
    title="rcf vs load",
    x_label="system load (MW)",
    y_label="capacity factor",
    panels=(
        PanelSpec("non-winter", ("a (non-winter)", "b (non-winter)")),
        PanelSpec("winter", ("a (winter)",)),
    ),
)


class TestScatter:
    def test_two_panel_output(self, tmp_path):
        series = {
            "a (non-winter)": mk_pairs(),
            "b (non-winter)": mk_pairs(4),
            "a (winter)": mk_pairs(3),
        }
        path = emit_chart(SCATTER, series, tmp_path / "s.svg")
        text = path.read_text()
        assert text.count('id="axes_') == 2

    def test_determinism(self, tmp_path):
        series = {
            "a (non-winter)": mk_pairs(),
            "b (non-winter)": mk_pairs(4),
            "a (winter)": mk_pairs(3),
        }
        a = emit_chart(SCATTER, series, tmp_path / "a.svg")
        b = emit_chart(SCATTER, series, tmp_path / "b.svg")
        assert a.read_bytes() == b.read_bytes()

    def test_empty_pairs_rejected(self, tmp_path):
        series = {
            "a (non-winter)": AlignedPairs("x", "y", []),
            "b (non-winter)": mk_pairs(),
            "a (winter)": mk_pairs(),
        }
        with pytest.raises(ChartError, match="a \\(non-winter\\)"):
            emit_chart(SCATTER, series, tmp_path / "s.svg")

    def test_single_point_panel_renders_without_fit(self, tmp_path):
        spec = ChartSpec(
            kind=CHART_SCATTER_FIT, title="tiny", x_label="x", y_label="y",
            panels=(PanelSpec("only", ("solo",)),),
        )
        path = emit_chart(spec, {"solo": mk_pairs(1)}, tmp_path / "s.svg")
        assert path.stat().st_size > 0


def test_unknown_kind_rejected(tmp_path):
    spec = ChartSpec(kind="pie", title="t", x_label="x", y_label="y")
    with pytest.raises(ChartError, match="pie"):
        emit_chart(spec, {}, tmp_path / "c.svg")
