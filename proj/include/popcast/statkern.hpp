#pragma once

#include "popcast/series.hpp"

#include <cstddef>
#include <span>

namespace popcast {

/// Fitted line `population = intercept + slope * t` with the window it was fitted on.
struct RegressionLine {
    double intercept = 0.0;
    double slope = 0.0;
    Period window_start_t = 0;
    std::size_t window_len = 0;

    double at(Period t) const noexcept { return intercept + slope * static_cast<double>(t); }

    bool operator==(const RegressionLine&) const = default;
};

/// Residual and design statistics of a fit, as consumed by interval_radius().
struct FitDiagnostics {
    double sce = 0.0;       ///< sum of squared residuals
    double s_e2 = 0.0;      ///< sce / (n - 2)
    double mean_t = 0.0;    ///< mean of t over the window
    double sum_t_sq = 0.0;  ///< sum of t^2 over the window
    double sxx = 0.0;       ///< sum of (t - mean_t)^2, equal to sum_t_sq - n * mean_t^2

    bool operator==(const FitDiagnostics&) const = default;
};

struct OlsFit {
    RegressionLine line;
    FitDiagnostics diagnostics;
};

inline constexpr std::size_t kMinWindowLength = 3;

/**
 * Ordinary least squares of population on t over a window of n >= 3
 * observations with strictly increasing t.
 *
 * Slope and intercept follow the normal-equation closed form,
 * B = (n St_P - St SP) / (n Stt - St^2), A = SP/n - B St/n, with every sum
 * accumulated with compensation. Residuals at floating-point rounding level
 * are counted as zero, so an exact line yields sce == 0.
 */
OlsFit fit_ols(std::span<const Observation> window);

/// Two-tailed Student-t quantile: q with P(|T_df| <= q) = confidence.
/// Accurate to better than 1e-8 absolute.
double t_quantile(int df, double confidence);

/// P(|T_df| <= q) for q >= 0.
double student_t_central_mass(int df, double q);

namespace special {

/// ln Gamma(x) for x > 0 (Lanczos approximation, ~1e-15 relative).
double log_gamma(double x);

/// Regularized incomplete beta I_x(a, b) for a, b > 0, x in [0, 1].
double incomplete_beta(double a, double b, double x);

}  // namespace special

}  // namespace popcast
