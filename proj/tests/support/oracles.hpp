#pragma once

// Independent reference computations used only by tests. Nothing here calls
// into the library's numeric code.

#include "popcast/series.hpp"

#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace popcast::oracle {

struct LineFit {
    long double intercept = 0;
    long double slope = 0;
    long double sce = 0;
};

/// Solves the 2x2 normal equations [n St; St Stt][A B]' = [SP StP]' by
/// partial-pivot elimination in extended precision.
inline LineFit ols(std::span<const Observation> window) {
    long double n = 0, st = 0, stt = 0, sp = 0, stp = 0;
    for (const auto& o : window) {
        const long double t = static_cast<long double>(o.t);
        const long double p = o.population;
        n += 1;
        st += t;
        stt += t * t;
        sp += p;
        stp += t * p;
    }
    long double m[2][3] = {{n, st, sp}, {st, stt, stp}};
    if (std::fabs(m[1][0]) > std::fabs(m[0][0])) {
        for (int j = 0; j < 3; ++j) std::swap(m[0][j], m[1][j]);
    }
    const long double factor = m[1][0] / m[0][0];
    for (int j = 0; j < 3; ++j) m[1][j] -= factor * m[0][j];
    LineFit fit;
    fit.slope = m[1][2] / m[1][1];
    fit.intercept = (m[0][2] - m[0][1] * fit.slope) / m[0][0];
    for (const auto& o : window) {
        const long double r = o.population - (fit.intercept + fit.slope * static_cast<long double>(o.t));
        fit.sce += r * r;
    }
    return fit;
}

namespace detail {

inline long double simpson(const std::function<long double(long double)>& f, long double a, long double b,
                           long double fa, long double fm, long double fb, long double whole, long double tol,
                           int depth) {
    const long double m = (a + b) / 2;
    const long double lm = (a + m) / 2;
    const long double rm = (m + b) / 2;
    const long double flm = f(lm);
    const long double frm = f(rm);
    const long double left = (m - a) / 6 * (fa + 4 * flm + fm);
    const long double right = (b - m) / 6 * (fm + 4 * frm + fb);
    const long double delta = left + right - whole;
    if (depth <= 0 || std::fabs(delta) <= 15 * tol) return left + right + delta / 15;
    return simpson(f, a, m, fa, flm, fm, left, tol / 2, depth - 1) +
           simpson(f, m, b, fm, frm, fb, right, tol / 2, depth - 1);
}

}  // namespace detail

/// Adaptive Simpson quadrature.
inline long double integrate(const std::function<long double(long double)>& f, long double a, long double b,
                             long double tol = 1e-14L) {
    const long double fa = f(a);
    const long double fb = f(b);
    const long double fm = f((a + b) / 2);
    const long double whole = (b - a) / 6 * (fa + 4 * fm + fb);
    return detail::simpson(f, a, b, fa, fm, fb, whole, tol, 60);
}

/// P(|T_df| <= q) by integrating the Student-t density over [0, q].
inline long double t_central_mass(int df, long double q) {
    const long double nu = df;
    const long double log_norm =
        std::lgamma((nu + 1) / 2) - std::lgamma(nu / 2) - 0.5L * std::log(nu * 3.14159265358979323846264338327950288L);
    const long double norm = std::exp(log_norm);
    auto density = [&](long double x) { return norm * std::pow(1 + x * x / nu, -(nu + 1) / 2); };
    return 2 * integrate(density, 0, q);
}

/// Bisection on the integrated CDF.
inline double t_quantile(int df, double confidence) {
    long double lo = 0, hi = 1;
    while (t_central_mass(df, hi) < confidence) {
        lo = hi;
        hi *= 2;
    }
    for (int i = 0; i < 200 && hi - lo > 1e-13L; ++i) {
        const long double mid = (lo + hi) / 2;
        if (t_central_mass(df, mid) < confidence) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return static_cast<double>((lo + hi) / 2);
}

/// Hand-expanded single-line prediction-interval radius, with a caller-supplied quantile.
inline long double radius(std::span<const Observation> window, const LineFit& fit, long double target_t,
                          long double quantile) {
    const long double n = window.size();
    long double st = 0, stt = 0;
    for (const auto& o : window) {
        st += o.t;
        stt += static_cast<long double>(o.t) * o.t;
    }
    const long double mean = st / n;
    const long double lev = 1 + 1 / n + (target_t - mean) * (target_t - mean) / (stt - n * mean * mean);
    return quantile * std::sqrt(lev * fit.sce / (n - 2));
}

}  // namespace popcast::oracle
