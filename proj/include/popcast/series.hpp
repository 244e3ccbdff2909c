#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace popcast {

/// 1-based period index.
using Period = std::int64_t;

struct Observation {
    Period t = 0;
    std::string label;
    double population = 0.0;

    bool operator==(const Observation&) const = default;
};

/**
 * Population history of one center.
 *
 * Observations are held in period order with strictly consecutive t values
 * (no gaps, no duplicates) and at least one entry. The constructor enforces
 * this; instances are immutable afterwards.
 */
class PopulationSeries {
public:
    PopulationSeries(std::string center_id, std::vector<Observation> observations);

    const std::string& center_id() const noexcept { return center_id_; }
    std::span<const Observation> observations() const noexcept { return observations_; }
    std::size_t size() const noexcept { return observations_.size(); }

    Period first_t() const noexcept { return observations_.front().t; }
    Period last_t() const noexcept { return observations_.back().t; }
    bool contains(Period t) const noexcept { return t >= first_t() && t <= last_t(); }

    /// Observation at period t. Throws a range error if t is not covered.
    const Observation& at(Period t) const;

    /// Copy of the series truncated after period last_t (inclusive).
    PopulationSeries prefix(Period last_t) const;

private:
    std::string center_id_;
    std::vector<Observation> observations_;
};

/// Parses the `t,period,population` CSV layout. Accepts LF or CRLF line
/// endings, an optional UTF-8 BOM, and quoted or bare period labels.
PopulationSeries parse_series(std::istream& in, std::string center_id = {});

/// Reads one CSV file; the center id is the file name without extension.
PopulationSeries read_series_file(const std::filesystem::path& path);

/// Writes the series back in the same CSV layout with round-trip numbers.
void write_series_csv(std::ostream& out, const PopulationSeries& series);

/// The `count` observations starting at period `start_t`.
std::span<const Observation> slice_window(const PopulationSeries& series, Period start_t, Period count);

}  // namespace popcast
