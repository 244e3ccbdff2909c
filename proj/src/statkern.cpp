#include "popcast/statkern.hpp"

#include "numfmt.hpp"
#include "popcast/error.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace popcast {

namespace {

// Neumaier's variant of Kahan summation.
class CompensatedSum {
public:
    void add(double x) noexcept {
        const double t = sum_ + x;
        if (std::fabs(sum_) >= std::fabs(x)) {
            compensation_ += (sum_ - t) + x;
        } else {
            compensation_ += (x - t) + sum_;
        }
        sum_ = t;
    }

    // Adds a*b including the rounding error of the product.
    void add_product(double a, double b) noexcept {
        const double p = a * b;
        add(p);
        add(std::fma(a, b, -p));
    }

    double value() const noexcept { return sum_ + compensation_; }

private:
    double sum_ = 0.0;
    double compensation_ = 0.0;
};

// a*b - c*d with one rounding (Kahan's fma formulation).
double difference_of_products(double a, double b, double c, double d) noexcept {
    const double w = c * d;
    const double e = std::fma(-c, d, w);
    const double f = std::fma(a, b, -w);
    return f + e;
}

// Residuals within this many ulps of the operands are rounding noise.
constexpr double kResidualFloorUlps = 64.0;

constexpr double kQuantileWidth = 1e-12;

}  // namespace

OlsFit fit_ols(std::span<const Observation> window) {
    const std::size_t n = window.size();
    if (n < kMinWindowLength) {
        throw Error(ErrorKind::insufficient_data,
                    "regression window needs at least 3 observations, got " + std::to_string(n));
    }

    CompensatedSum st, sp, stp, stt;
    for (std::size_t i = 0; i < n; ++i) {
        const auto& obs = window[i];
        if (!std::isfinite(obs.population)) {
            throw Error(ErrorKind::domain, "non-finite population at t=" + std::to_string(obs.t));
        }
        if (i > 0 && obs.t <= window[i - 1].t) {
            throw Error(ErrorKind::domain, "window t values must be strictly increasing at t=" +
                                               std::to_string(obs.t));
        }
        const auto t = static_cast<double>(obs.t);
        st.add(t);
        sp.add(obs.population);
        stp.add_product(t, obs.population);
        stt.add_product(t, t);
    }

    const auto nd = static_cast<double>(n);
    const double sum_t = st.value();
    const double sum_p = sp.value();
    const double numerator = difference_of_products(nd, stp.value(), sum_t, sum_p);
    const double denominator = difference_of_products(nd, stt.value(), sum_t, sum_t);
    const double slope = numerator / denominator;
    const double mean_t = sum_t / nd;
    const double intercept = sum_p / nd - slope * mean_t;

    if (!std::isfinite(slope) || !std::isfinite(intercept)) {
        throw Error(ErrorKind::domain, "regression produced non-finite coefficients");
    }

    constexpr double eps = std::numeric_limits<double>::epsilon();
    CompensatedSum sce, sxx;
    for (const auto& obs : window) {
        const auto t = static_cast<double>(obs.t);
        const double trend = slope * t;
        double residual = obs.population - (intercept + trend);
        const double floor =
            kResidualFloorUlps * eps * (std::fabs(obs.population) + std::fabs(intercept) + std::fabs(trend));
        if (std::fabs(residual) <= floor) residual = 0.0;
        sce.add(residual * residual);
        const double dt = t - mean_t;
        sxx.add(dt * dt);
    }

    OlsFit fit;
    fit.line = {intercept, slope, window.front().t, n};
    fit.diagnostics.sce = sce.value();
    fit.diagnostics.s_e2 = fit.diagnostics.sce / (nd - 2.0);
    fit.diagnostics.mean_t = mean_t;
    fit.diagnostics.sum_t_sq = stt.value();
    fit.diagnostics.sxx = sxx.value();
    return fit;
}

double student_t_central_mass(int df, double q) {
    if (df < 1) throw Error(ErrorKind::domain, "degrees of freedom must be >= 1, got " + std::to_string(df));
    if (std::isnan(q)) throw Error(ErrorKind::domain, "quantile argument is NaN");
    if (q <= 0.0) return 0.0;
    if (std::isinf(q)) return 1.0;
    // P(|T| <= q) = I_x(1/2, df/2) with x = q^2 / (df + q^2).
    const double q2 = q * q;
    const double x = q2 / (static_cast<double>(df) + q2);
    return special::incomplete_beta(0.5, 0.5 * df, x);
}

double t_quantile(int df, double confidence) {
    if (df < 1) throw Error(ErrorKind::domain, "degrees of freedom must be >= 1, got " + std::to_string(df));
    if (!(confidence > 0.0 && confidence < 1.0)) {
        throw Error(ErrorKind::domain, "confidence must lie in (0, 1), got " + detail::shortest(confidence));
    }

    double lo = 0.0;
    double hi = 1.0;
    while (student_t_central_mass(df, hi) < confidence) {
        lo = hi;
        hi *= 2.0;
        if (!std::isfinite(hi)) throw Error(ErrorKind::domain, "t quantile bracket overflow");
    }
    while (hi - lo > kQuantileWidth) {
        const double mid = lo + 0.5 * (hi - lo);
        if (mid <= lo || mid >= hi) break;
        if (student_t_central_mass(df, mid) < confidence) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return lo + 0.5 * (hi - lo);
}

namespace special {

double log_gamma(double x) {
    if (!(x > 0.0)) throw Error(ErrorKind::domain, "log_gamma requires x > 0");
    if (x < 0.5) {
        // Reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x).
        return std::log(std::numbers::pi / std::sin(std::numbers::pi * x)) - log_gamma(1.0 - x);
    }
    // Lanczos, g = 7, n = 9.
    static constexpr std::array<double, 9> coefficients = {
        0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
        771.32342877765313,   -176.61502916214059,   12.507343278686905,
        -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7,
    };
    constexpr double g = 7.0;
    const double z = x - 1.0;
    double series = coefficients[0];
    for (std::size_t i = 1; i < coefficients.size(); ++i) {
        series += coefficients[i] / (z + static_cast<double>(i));
    }
    const double t = z + g + 0.5;
    return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t + std::log(series);
}

namespace {

// Continued fraction for I_x(a, b), modified Lentz.
double beta_continued_fraction(double a, double b, double x) {
    constexpr int max_iterations = 10000;
    constexpr double eps = 1e-16;
    constexpr double tiny = 1e-300;

    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < tiny) d = tiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= max_iterations; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < eps) return h;
    }
    throw Error(ErrorKind::domain, "incomplete beta continued fraction did not converge");
}

}  // namespace

double incomplete_beta(double a, double b, double x) {
    if (!(a > 0.0 && b > 0.0)) throw Error(ErrorKind::domain, "incomplete_beta requires a, b > 0");
    if (!(x >= 0.0 && x <= 1.0)) throw Error(ErrorKind::domain, "incomplete_beta requires x in [0, 1]");
    if (x == 0.0) return 0.0;
    if (x == 1.0) return 1.0;
    const double log_front =
        log_gamma(a + b) - log_gamma(a) - log_gamma(b) + a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(log_front);
    if (x < (a + 1.0) / (a + b + 2.0)) {
        return front * beta_continued_fraction(a, b, x) / a;
    }
    return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

}  // namespace special

}  // namespace popcast
