#include "popcast/backtest.hpp"

#include "numfmt.hpp"
#include "popcast/error.hpp"

#include <algorithm>
#include <future>
#include <string>

namespace popcast {

void BacktestProtocol::validate() const {
    if (i_l < 1) throw Error(ErrorKind::domain, "i_l must be >= 1, got " + std::to_string(i_l));
    if (n_c < static_cast<Period>(kMinWindowLength)) {
        throw Error(ErrorKind::domain, "n_c must be >= 3, got " + std::to_string(n_c));
    }
    if (!(alpha_c >= 0.0 && alpha_c <= 1.0)) {
        throw Error(ErrorKind::domain, "alpha_c must lie in [0, 1], got " + detail::shortest(alpha_c));
    }
    if (!(confidence > 0.0 && confidence < 1.0)) {
        throw Error(ErrorKind::domain, "confidence must lie in (0, 1), got " + detail::shortest(confidence));
    }
    if (first_target_t < i_l + static_cast<Period>(kMinWindowLength)) {
        throw Error(ErrorKind::insufficient_data, "first target t=" + std::to_string(first_target_t) +
                                                      " leaves fewer than 3 periods after i_l=" +
                                                      std::to_string(i_l));
    }
    if (last_target_t < first_target_t) {
        throw Error(ErrorKind::domain, "last target t=" + std::to_string(last_target_t) +
                                           " precedes first target t=" + std::to_string(first_target_t));
    }
}

bool interval_contains(const Forecast& forecast, double actual) noexcept {
    return forecast.lower <= actual && actual <= forecast.upper;
}

BacktestReport run_backtest(const PopulationSeries& series, const BacktestProtocol& protocol) {
    protocol.validate();
    if (protocol.i_l < series.first_t() || protocol.last_target_t > series.last_t()) {
        throw Error(ErrorKind::range, series.center_id() + ": backtest needs periods [" +
                                          std::to_string(protocol.i_l) + ", " +
                                          std::to_string(protocol.last_target_t) + "], series covers [" +
                                          std::to_string(series.first_t()) + ", " +
                                          std::to_string(series.last_t()) + "]");
    }

    BacktestReport report;
    report.center_id = series.center_id();
    report.records.reserve(static_cast<std::size_t>(protocol.last_target_t - protocol.first_target_t + 1));

    for (Period target = protocol.first_target_t; target <= protocol.last_target_t; ++target) {
        ForecastParams params;
        params.i_l = protocol.i_l;
        params.n_l = target - protocol.i_l;
        params.n_c = std::min(protocol.n_c, params.n_l);
        params.alpha_c = protocol.alpha_c;
        params.confidence = protocol.confidence;

        BacktestRecord record;
        record.target_t = target;
        record.actual = series.at(target).population;
        record.short_clamped = params.n_c < protocol.n_c;
        try {
            record.forecast = forecast_next(series.prefix(target - 1), params);
        } catch (const Error& e) {
            throw Error(e.kind(), series.center_id() + ", target t=" + std::to_string(target) + ": " + e.what());
        }
        record.hit = interval_contains(record.forecast, record.actual);
        if (!record.hit) ++report.failures;
        report.records.push_back(std::move(record));
    }
    report.runs = report.records.size();
    report.failure_rate = static_cast<double>(report.failures) / static_cast<double>(report.runs);
    return report;
}

std::vector<BacktestReport> run_backtests(std::span<const PopulationSeries> series,
                                          std::span<const BacktestProtocol> protocols) {
    if (series.size() != protocols.size()) {
        throw Error(ErrorKind::domain, "run_backtests: one protocol per series required");
    }
    std::vector<std::future<BacktestReport>> pending;
    pending.reserve(series.size());
    for (std::size_t i = 0; i < series.size(); ++i) {
        pending.push_back(std::async(std::launch::async, [&series, &protocols, i] {
            return run_backtest(series[i], protocols[i]);
        }));
    }
    std::vector<BacktestReport> reports;
    reports.reserve(pending.size());
    for (auto& p : pending) reports.push_back(p.get());
    return reports;
}

BacktestReport aggregate_reports(std::span<const BacktestReport> reports) {
    if (reports.empty()) throw Error(ErrorKind::domain, "cannot aggregate an empty list of reports");
    BacktestReport all;
    all.center_id = "ALL";
    for (const auto& r : reports) {
        all.records.insert(all.records.end(), r.records.begin(), r.records.end());
        all.runs += r.runs;
        all.failures += r.failures;
    }
    all.failure_rate = all.runs == 0 ? 0.0 : static_cast<double>(all.failures) / static_cast<double>(all.runs);
    return all;
}

}  // namespace popcast
