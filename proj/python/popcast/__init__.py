"""Dual-window linear regression population forecaster."""

from ._core import (
    BacktestProtocol,
    BacktestRecord,
    BacktestReport,
    FitDiagnostics,
    Forecast,
    ForecastParams,
    Observation,
    ParseError,
    PopcastError,
    PopulationSeries,
    RegressionLine,
    SynthParams,
    Window,
    WindowPlan,
    __version__,
    aggregate_reports,
    fit_ols,
    forecast_next,
    generate_series,
    interval_radius,
    parse_series,
    point_estimate,
    read_series_file,
    resolve_windows,
    run_backtest,
    slice_window,
    t_quantile,
)

__all__ = [name for name in dir() if not name.startswith("_")] + ["__version__"]
