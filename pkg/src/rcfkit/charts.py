"""Static SVG charts: dual-axis monthly series and seasonal scatter panels.

Output is deterministic: a fixed svg.hashsalt pins the generated element
ids and the date metadata is stripped, so identical inputs produce
byte-identical files.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Mapping

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .analysis import AlignedPairs, ols_fit
from .errors import ChartError, DegenerateDataError, InsufficientDataError
from .metrics import MonthlySeries

CHART_DUAL_AXIS = "dual_axis_timeseries"
CHART_SCATTER_FIT = "scatter_with_fit"

_SVG_RC = {"svg.hashsalt": "rcfkit"}
_LEFT_COLORS = ("tab:orange", "tab:blue", "tab:red", "tab:purple", "tab:brown", "tab:pink")
_RIGHT_COLORS = ("tab:green", "tab:olive", "tab:cyan")


@dataclass(frozen=True)
class PanelSpec:
    title: str
    series: tuple[str, ...]


@dataclass(frozen=True)
class ChartSpec:
    kind: str  # CHART_DUAL_AXIS or CHART_SCATTER_FIT
    title: str
    x_label: str
    y_label: str
    y2_label: str = ""  # dual-axis right side
    left_series: tuple[str, ...] = ()
    right_series: tuple[str, ...] = ()
    panels: tuple[PanelSpec, ...] = ()


def _display(label: str) -> str:
    return label.replace("_", " ")


def _resolve(spec_name: str, label: str, series: Mapping[str, object]):
    if label not in series:
        raise ChartError(f"chart {spec_name!r} references unknown series {label!r}")
    resolved = series[label]
    if len(resolved) == 0:  # type: ignore[arg-type]
        raise ChartError(f"chart {spec_name!r}: series {label!r} is empty")
    return resolved


def _month_positions(all_series: list[MonthlySeries]) -> dict:
    months = sorted({p.month for s in all_series for p in s.points})
    return {m: i for i, m in enumerate(months)}


def _draw_dual_axis(spec: ChartSpec, series: Mapping[str, object], fig) -> None:
    left = [_resolve(spec.title, name, series) for name in spec.left_series]
    right = [_resolve(spec.title, name, series) for name in spec.right_series]
    for s in left + right:
        if not isinstance(s, MonthlySeries):
            raise ChartError(f"chart {spec.title!r}: {s!r} is not a monthly series")
    left_units = {s.unit for s in left}
    right_units = {s.unit for s in right}
    if len(left_units) != 1 or len(right_units) != 1 or left_units == right_units:
        raise ChartError(
            f"chart {spec.title!r}: dual-axis chart needs exactly two unit systems, "
            f"got left={sorted(left_units)} right={sorted(right_units)}"
        )

    positions = _month_positions(left + right)
    ax = fig.add_subplot(111)
    ax2 = ax.twinx()
    handles = []
    for i, s in enumerate(left):
        xs = [positions[p.month] for p in s.points]
        (line,) = ax.plot(
            xs, s.values(), color=_LEFT_COLORS[i % len(_LEFT_COLORS)],
            marker="o", markersize=3, linewidth=1.4, label=_display(s.label),
        )
        handles.append(line)
    for i, s in enumerate(right):
        xs = [positions[p.month] for p in s.points]
        (line,) = ax2.plot(
            xs, s.values(), color=_RIGHT_COLORS[i % len(_RIGHT_COLORS)],
            marker="s", markersize=3, linewidth=1.4, linestyle="--",
            label=_display(s.label),
        )
        handles.append(line)

    months = sorted(positions, key=positions.get)
    step = max(1, len(months) // 10)
    ticks = list(range(0, len(months), step))
    ax.set_xticks(ticks)
    ax.set_xticklabels([str(months[i]) for i in ticks], rotation=45, ha="right")
    ax.set_xlabel(spec.x_label)
    ax.set_ylabel(spec.y_label)
    ax2.set_ylabel(spec.y2_label)
    ax.set_title(spec.title)
    ax.legend(handles=handles, labels=[h.get_label() for h in handles], fontsize=8)
    ax.grid(True, alpha=0.3)


def _draw_scatter(spec: ChartSpec, series: Mapping[str, object], fig) -> None:
    if not spec.panels:
        raise ChartError(f"chart {spec.title!r}: scatter chart needs at least one panel")
    for col, panel in enumerate(spec.panels):
        ax = fig.add_subplot(1, len(spec.panels), col + 1)
        for i, name in enumerate(panel.series):
            pairs = _resolve(spec.title, name, series)
            if not isinstance(pairs, AlignedPairs):
                raise ChartError(f"chart {spec.title!r}: {name!r} is not aligned pairs")
            color = _LEFT_COLORS[i % len(_LEFT_COLORS)]
            ax.scatter(pairs.xs(), pairs.ys(), s=18, color=color, label=_display(name))
            try:
                fit = ols_fit(pairs)
            except (InsufficientDataError, DegenerateDataError):
                continue  # scatter alone; too few points for a trend line
            x_lo, x_hi = min(pairs.xs()), max(pairs.xs())
            ax.plot(
                [x_lo, x_hi],
                [fit.slope * x_lo + fit.intercept, fit.slope * x_hi + fit.intercept],
                color=color, linestyle="--", linewidth=1.2,
            )
        ax.set_title(panel.title, fontsize=10)
        ax.set_xlabel(spec.x_label)
        if col == 0:
            ax.set_ylabel(spec.y_label)
        ax.legend(fontsize=8)
        ax.grid(True, alpha=0.3)
    fig.suptitle(spec.title)


def emit_chart(
    spec: ChartSpec,
    series: Mapping[str, MonthlySeries | AlignedPairs],
    out_path: str | Path,
) -> Path:
    """Render the spec against the given series and write an SVG file."""
    out_path = Path(out_path)
    with matplotlib.rc_context(_SVG_RC):
        fig = plt.figure(figsize=(10, 5), dpi=100)
        try:
            if spec.kind == CHART_DUAL_AXIS:
                _draw_dual_axis(spec, series, fig)
            elif spec.kind == CHART_SCATTER_FIT:
                _draw_scatter(spec, series, fig)
            else:
                raise ChartError(f"unknown chart kind {spec.kind!r}")
            fig.tight_layout()
            fig.savefig(out_path, format="svg", metadata={"Date": None})
        finally:
            plt.close(fig)
    return out_path
