#pragma once

#include "popcast/backtest.hpp"
#include "popcast/forecast.hpp"
#include "popcast/synth.hpp"

#include <filesystem>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace popcast {

enum class OutputFormat { human, structured, plot_table };

OutputFormat parse_output_format(std::string_view name);

/// Shortest decimal that reads back to the same double; "NA" for non-finite values.
std::string format_number(double value);

inline constexpr std::string_view kMissing = "NA";
inline constexpr std::string_view kStructuredMagic = "popcast-structured 1";

void render_forecast(std::ostream& out, const PopulationSeries& series, const ForecastParams& params,
                     const Forecast& forecast, OutputFormat format);

void render_backtest(std::ostream& out, std::span<const BacktestReport> reports, const BacktestReport& aggregate,
                     OutputFormat format);

void render_synth(std::ostream& out, const SynthParams& params, std::span<const PopulationSeries> series,
                  std::span<const std::filesystem::path> files, OutputFormat format);

/**
 * Parsed form of the structured output.
 *
 * The document is a sequence of `key: value` lines grouped into sections
 * opened by `section: <name>` and closed by `end: <name>`. Lines of the form
 * `record: k=v k=v ...` append a record to the current section.
 */
struct StructuredSection {
    std::string name;
    std::vector<std::pair<std::string, std::string>> fields;
    std::vector<std::map<std::string, std::string>> records;

    /// Value of the first field named `key`; throws a parse error if absent.
    const std::string& field(std::string_view key) const;
    double number(std::string_view key) const;
};

struct StructuredDocument {
    StructuredSection header;  ///< fields outside any section
    std::vector<StructuredSection> sections;
};

StructuredDocument parse_structured(std::istream& in);

/// Inverse of format_number(); "NA" reads as NaN.
double parse_number(std::string_view text);

}  // namespace popcast
