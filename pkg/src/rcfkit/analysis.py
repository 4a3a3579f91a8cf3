"""Correlation, seasonal partitioning, and least-squares fits of RCF vs load.

Plain unweighted OLS, matching the simple trend lines the series call for;
x stays in raw MW, so slopes come out around 1e-6 per MW and the report
layer rescales to per-GW for display.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DegenerateDataError, InsufficientDataError
from .metrics import MonthlySeries
from .regions import Month, RegionConfig, Season, season_of


@dataclass(frozen=True)
class AlignedPair:
    month: Month
    x: float
    y: float


@dataclass
class AlignedPairs:
    x_label: str
    y_label: str
    pairs: list[AlignedPair]

    def __len__(self) -> int:
        return len(self.pairs)

    def xs(self) -> list[float]:
        return [p.x for p in self.pairs]

    def ys(self) -> list[float]:
        return [p.y for p in self.pairs]


@dataclass(frozen=True)
class RegressionFit:
    slope: float  # y units per x unit (per MW here)
    intercept: float
    r_squared: float
    n: int


@dataclass(frozen=True)
class SlopeComparison:
    larger: str  # "first" | "second" | "equal"
    difference: float  # |slope_first - slope_second|


def align(x: MonthlySeries, y: MonthlySeries) -> AlignedPairs:
    """Inner join of two series on month; empty intersection is allowed."""
    y_by_month = y.as_dict()
    pairs = [
        AlignedPair(p.month, p.value, y_by_month[p.month])
        for p in x.points
        if p.month in y_by_month
    ]
    return AlignedPairs(x.label, y.label, pairs)


def _moments(pairs: AlignedPairs) -> tuple[float, float, float, float, float]:
    n = len(pairs)
    xs, ys = pairs.xs(), pairs.ys()
    mean_x = sum(xs) / n
    mean_y = sum(ys) / n
    sxx = sum((x - mean_x) ** 2 for x in xs)
    syy = sum((y - mean_y) ** 2 for y in ys)
    sxy = sum((x - mean_x) * (y - mean_y) for x, y in zip(xs, ys))
    return mean_x, mean_y, sxx, syy, sxy


def pearson(pairs: AlignedPairs) -> float:
    """Pearson correlation coefficient, defined only for nonzero variances."""
    if len(pairs) < 2:
        raise InsufficientDataError(f"need at least 2 pairs, have {len(pairs)}")
    _, _, sxx, syy, sxy = _moments(pairs)
    if sxx == 0.0 or syy == 0.0:
        raise DegenerateDataError(
            f"correlation undefined: zero variance in "
            f"{pairs.x_label if sxx == 0.0 else pairs.y_label}"
        )
    r = sxy / math.sqrt(sxx * syy)
    return max(-1.0, min(1.0, r))


def seasonal_split(
    pairs: AlignedPairs, config: RegionConfig
) -> tuple[AlignedPairs, AlignedPairs]:
    """Partition pairs into (winter, non_winter) by the configured season map."""
    winter = [p for p in pairs.pairs if season_of(p.month, config) is Season.WINTER]
    non_winter = [p for p in pairs.pairs if season_of(p.month, config) is Season.NON_WINTER]
    return (
        AlignedPairs(pairs.x_label, pairs.y_label, winter),
        AlignedPairs(pairs.x_label, pairs.y_label, non_winter),
    )


def ols_fit(pairs: AlignedPairs) -> RegressionFit:
    """Least-squares line y = slope*x + intercept.

    r_squared is 1 - SS_res/SS_tot, defined as 1 when y is exactly constant
    (SS_tot = SS_res = 0).
    """
    n = len(pairs)
    if n < 2:
        raise InsufficientDataError(f"need at least 2 pairs to fit, have {n}")
    mean_x, mean_y, sxx, syy, sxy = _moments(pairs)
    if sxx == 0.0:
        raise DegenerateDataError("fit undefined: zero variance in x")
    slope = sxy / sxx
    intercept = mean_y - slope * mean_x
    ss_res = sum((p.y - (slope * p.x + intercept)) ** 2 for p in pairs.pairs)
    if syy == 0.0:
        r_squared = 1.0 if ss_res == 0.0 else 0.0
    else:
        r_squared = max(0.0, min(1.0, 1.0 - ss_res / syy))
    return RegressionFit(slope=slope, intercept=intercept, r_squared=r_squared, n=n)


def compare_slopes(fit_a: RegressionFit, fit_b: RegressionFit) -> SlopeComparison:
    """Which slope is larger and by how much; exact float ties report equal."""
    if fit_a.slope > fit_b.slope:
        return SlopeComparison("first", fit_a.slope - fit_b.slope)
    if fit_b.slope > fit_a.slope:
        return SlopeComparison("second", fit_b.slope - fit_a.slope)
    return SlopeComparison("equal", 0.0)
