"""Regional capacity factor analytics for wholesale power market data."""

from .analysis import (
    AlignedPair,
    AlignedPairs,
    RegressionFit,
    SlopeComparison,
    align,
    compare_slopes,
    ols_fit,
    pearson,
    seasonal_split,
)
from .ingest import (
    CapacityRecord,
    GasPriceRecord,
    GenerationRecord,
    HourlyLoadRecord,
    IngestWarning,
    parse_capacity,
    parse_gas_prices,
    parse_generation,
    parse_hourly_load,
)
from .metrics import (
    FOSSIL_FUELS,
    MonthlySeries,
    RcfQuery,
    SeriesPoint,
    compute_monthly_load,
    compute_rcf,
    compute_regional_gas_price,
)
from .pipeline import PipelineManifest, RunReport, execute, run_pipeline
from .regions import (
    Month,
    RegionConfig,
    Season,
    default_config,
    hours_in_month,
    load_config,
    month_range,
    season_of,
)
from .selection import (
    PlantProfile,
    SelectionResult,
    build_profiles,
    mean_monthly_capacity,
    select_plants,
)

__version__ = "0.1.0"
