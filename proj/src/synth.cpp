#include "popcast/synth.hpp"

#include "popcast/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

namespace popcast {

namespace {

// Distribution objects in <random> are implementation-defined; the engine's
// raw output is not, so the transforms below keep files identical across
// standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double gaussian() {
        const double u1 = 1.0 - uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

private:
    std::mt19937_64 engine_;
};

std::string month_label(int start_year, Period t) {
    char buffer[32];
    const auto year = start_year + static_cast<int>((t - 1) / 12);
    const auto month = static_cast<int>((t - 1) % 12) + 1;
    std::snprintf(buffer, sizeof buffer, "%d-%02d", year, month);
    return buffer;
}

}  // namespace

void SynthParams::validate() const {
    if (centers < 1) throw Error(ErrorKind::domain, "centers must be >= 1");
    if (periods < 1) throw Error(ErrorKind::domain, "periods must be >= 1");
    if (!std::isfinite(base) || !std::isfinite(trend)) throw Error(ErrorKind::domain, "base and trend must be finite");
    if (!(noise >= 0.0) || !std::isfinite(noise)) throw Error(ErrorKind::domain, "noise must be finite and >= 0");
    if (!(shocks >= 0.0 && shocks <= 1.0)) throw Error(ErrorKind::domain, "shocks must lie in [0, 1]");
    if (!(shock_size >= 0.0) || !std::isfinite(shock_size)) {
        throw Error(ErrorKind::domain, "shock size must be finite and >= 0");
    }
}

std::vector<PopulationSeries> generate_series(const SynthParams& params) {
    params.validate();
    Rng rng(params.seed);
    std::vector<PopulationSeries> out;
    out.reserve(params.centers);

    for (std::size_t c = 0; c < params.centers; ++c) {
        // Coefficients on a 1/64 grid keep noiseless series exactly representable,
        // so their forecasts reproduce the next value bit for bit.
        const double level = std::round(64.0 * params.base * (0.7 + 0.6 * rng.uniform())) / 64.0;
        const double slope = std::round(64.0 * params.trend * (0.5 + rng.uniform())) / 64.0;
        const double intercept = level - slope;

        std::vector<Observation> rows;
        rows.reserve(params.periods);
        for (std::size_t i = 0; i < params.periods; ++i) {
            const auto t = static_cast<Period>(i + 1);
            const double z = rng.gaussian();
            const double shock_draw = rng.uniform();
            const double shock_sign = rng.uniform() < 0.5 ? -1.0 : 1.0;
            const double shock_scale = 0.5 + rng.uniform();

            double population = intercept + slope * static_cast<double>(t);
            if (params.noise > 0.0) population += params.noise * z;
            if (shock_draw < params.shocks) population += shock_sign * params.shock_size * shock_scale;
            rows.push_back({t, month_label(params.start_year, t), std::max(0.0, population)});
        }

        char name[32];
        std::snprintf(name, sizeof name, "center_%02zu", c + 1);
        out.emplace_back(name, std::move(rows));
    }
    return out;
}

}  // namespace popcast
