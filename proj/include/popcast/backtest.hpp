#pragma once

#include "popcast/forecast.hpp"

#include <span>
#include <string>
#include <vector>

namespace popcast {

/// Rolling-origin protocol: every target in [first_target_t, last_target_t]
/// is forecast from a long window starting at i_l and ending just before it.
struct BacktestProtocol {
    Period i_l = 1;
    Period n_c = 6;
    double alpha_c = 0.5;
    double confidence = 0.9;
    Period first_target_t = 0;
    Period last_target_t = 0;

    void validate() const;
};

struct BacktestRecord {
    Period target_t = 0;
    double actual = 0.0;
    Forecast forecast;
    bool hit = false;              ///< lower <= actual <= upper
    bool short_clamped = false;    ///< short window shrunk to the long window length

    bool operator==(const BacktestRecord&) const = default;
};

struct BacktestReport {
    std::string center_id;
    std::vector<BacktestRecord> records;
    std::size_t runs = 0;
    std::size_t failures = 0;
    double failure_rate = 0.0;

    bool operator==(const BacktestReport&) const = default;
};

/// Closed-interval membership.
bool interval_contains(const Forecast& forecast, double actual) noexcept;

BacktestReport run_backtest(const PopulationSeries& series, const BacktestProtocol& protocol);

/// Runs one backtest per (series, protocol) pair, centers in parallel.
/// Output order matches input order.
std::vector<BacktestReport> run_backtests(std::span<const PopulationSeries> series,
                                          std::span<const BacktestProtocol> protocols);

/// Concatenates records under center id "ALL" and sums the counts.
BacktestReport aggregate_reports(std::span<const BacktestReport> reports);

}  // namespace popcast
