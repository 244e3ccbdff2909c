#include "popcast/forecast.hpp"

#include "numfmt.hpp"
#include "popcast/error.hpp"

#include <cmath>
#include <string>

namespace popcast {

namespace {

void require_unit_weight(double alpha_c) {
    if (!(alpha_c >= 0.0 && alpha_c <= 1.0)) {
        throw Error(ErrorKind::domain, "alpha_c must lie in [0, 1], got " + detail::shortest(alpha_c));
    }
}

}  // namespace

void ForecastParams::validate() const {
    if (i_l < 1) throw Error(ErrorKind::domain, "i_l must be >= 1, got " + std::to_string(i_l));
    if (n_c < static_cast<Period>(kMinWindowLength)) {
        throw Error(ErrorKind::domain, "n_c must be >= 3, got " + std::to_string(n_c));
    }
    if (n_l < n_c) {
        throw Error(ErrorKind::domain,
                    "n_l must be >= n_c, got n_l=" + std::to_string(n_l) + " n_c=" + std::to_string(n_c));
    }
    require_unit_weight(alpha_c);
    if (!(confidence > 0.0 && confidence < 1.0)) {
        throw Error(ErrorKind::domain, "confidence must lie in (0, 1), got " + detail::shortest(confidence));
    }
}

WindowPlan resolve_windows(const ForecastParams& params, const PopulationSeries& series) {
    params.validate();
    const Period last = params.i_l + params.n_l - 1;
    if (params.i_l < series.first_t() || last > series.last_t()) {
        throw Error(ErrorKind::range, "long window [" + std::to_string(params.i_l) + ", " + std::to_string(last) +
                                          "] not covered by series range [" + std::to_string(series.first_t()) +
                                          ", " + std::to_string(series.last_t()) + "]");
    }
    WindowPlan plan;
    plan.long_window = {params.i_l, params.n_l};
    plan.short_window = {params.i_l + params.n_l - params.n_c, params.n_c};
    plan.target_t = params.i_l + params.n_l;
    return plan;
}

double point_estimate(const RegressionLine& long_line, const RegressionLine& short_line, Period target_t,
                      double alpha_c) {
    require_unit_weight(alpha_c);
    // lerp is exact at both end weights and returns x unchanged when both inputs equal x.
    return std::lerp(long_line.at(target_t), short_line.at(target_t), alpha_c);
}

double interval_radius(const RegressionLine& line, const FitDiagnostics& diagnostics, Period target_t,
                       double confidence) {
    if (line.window_len < kMinWindowLength) {
        throw Error(ErrorKind::insufficient_data, "interval needs a window of at least 3 observations, got " +
                                                      std::to_string(line.window_len));
    }
    const int df = static_cast<int>(line.window_len) - 2;
    const double quantile = t_quantile(df, confidence);
    if (diagnostics.s_e2 == 0.0) return 0.0;

    const auto n = static_cast<double>(line.window_len);
    const double offset = static_cast<double>(target_t) - diagnostics.mean_t;
    const double leverage = 1.0 + 1.0 / n + offset * offset / diagnostics.sxx;
    return quantile * std::sqrt(leverage * diagnostics.s_e2);
}

Forecast forecast_next(const PopulationSeries& series, const ForecastParams& params) {
    const WindowPlan plan = resolve_windows(params, series);

    const OlsFit long_fit = fit_ols(slice_window(series, plan.long_window.start_t, plan.long_window.length));
    const OlsFit short_fit = fit_ols(slice_window(series, plan.short_window.start_t, plan.short_window.length));

    Forecast f;
    f.target_t = plan.target_t;
    f.windows = plan;
    f.long_line = long_fit.line;
    f.short_line = short_fit.line;
    f.long_diagnostics = long_fit.diagnostics;
    f.short_diagnostics = short_fit.diagnostics;
    f.point = point_estimate(f.long_line, f.short_line, plan.target_t, params.alpha_c);
    f.rho_l = interval_radius(f.long_line, f.long_diagnostics, plan.target_t, params.confidence);
    f.rho_c = interval_radius(f.short_line, f.short_diagnostics, plan.target_t, params.confidence);
    f.radius = std::lerp(f.rho_l, f.rho_c, params.alpha_c);
    f.lower = f.point - f.radius;
    f.upper = f.point + f.radius;
    return f;
}

}  // namespace popcast
