#pragma once

#include "popcast/series.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace popcast {

/// Linear trend + Gaussian noise + occasional one-month shocks.
struct SynthParams {
    std::size_t centers = 16;
    std::size_t periods = 63;
    std::uint64_t seed = 7;
    double base = 120.0;        ///< nominal level at t = 1
    double trend = 0.4;         ///< nominal persons per period
    double noise = 4.0;         ///< Gaussian noise standard deviation
    double shocks = 0.02;       ///< per-period probability of a shock
    double shock_size = 30.0;   ///< nominal shock magnitude
    int start_year = 2005;      ///< label of t = 1 is "<start_year>-01"

    void validate() const;
};

/// Deterministic in `seed`. Center i is named "center_NN" (1-based, zero padded).
/// With noise == 0 and shocks == 0 every series is exactly base_i + trend_i * t.
std::vector<PopulationSeries> generate_series(const SynthParams& params);

}  // namespace popcast
