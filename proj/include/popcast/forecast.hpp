#pragma once

#include "popcast/series.hpp"
#include "popcast/statkern.hpp"

namespace popcast {

/// Operator-supplied parameters of the dual-window forecaster.
struct ForecastParams {
    Period i_l = 1;            ///< first period of the long window
    Period n_l = 0;            ///< long window length
    Period n_c = 0;            ///< short window length, 3 <= n_c <= n_l
    double alpha_c = 0.5;      ///< weight of the short-window estimate, in [0, 1]
    double confidence = 0.9;   ///< two-sided interval confidence, in (0, 1)

    /// Throws a domain error naming the first violated constraint.
    void validate() const;
};

struct Window {
    Period start_t = 0;
    Period length = 0;

    Period last_t() const noexcept { return start_t + length - 1; }
    bool operator==(const Window&) const = default;
};

/// Both windows end on the same period; the target is the period after it.
struct WindowPlan {
    Window long_window;
    Window short_window;
    Period target_t = 0;

    bool operator==(const WindowPlan&) const = default;
};

struct Forecast {
    Period target_t = 0;
    double point = 0.0;
    double rho_l = 0.0;
    double rho_c = 0.0;
    double radius = 0.0;  ///< lerp(rho_l, rho_c, alpha_c)
    double lower = 0.0;   ///< point - radius
    double upper = 0.0;   ///< point + radius
    RegressionLine long_line;
    RegressionLine short_line;
    FitDiagnostics long_diagnostics;
    FitDiagnostics short_diagnostics;
    WindowPlan windows;

    bool operator==(const Forecast&) const = default;
};

/// Long window [I_L, I_L+N_L-1], short window starting at I_C = I_L + N_L - N_C,
/// target I_L + N_L.
WindowPlan resolve_windows(const ForecastParams& params, const PopulationSeries& series);

/// Weighted blend of the two lines' extrapolations at target_t.
double point_estimate(const RegressionLine& long_line, const RegressionLine& short_line, Period target_t,
                      double alpha_c);

/// Prediction-interval half width of a single fitted line at target_t.
double interval_radius(const RegressionLine& line, const FitDiagnostics& diagnostics, Period target_t,
                       double confidence);

/// One-step-ahead forecast of period I_L + N_L with its blended interval.
/// Observations after the long window are ignored.
Forecast forecast_next(const PopulationSeries& series, const ForecastParams& params);

}  // namespace popcast
