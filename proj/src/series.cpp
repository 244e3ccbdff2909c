#include "popcast/series.hpp"

#include "numfmt.hpp"
#include "popcast/error.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <utility>

namespace popcast {

namespace {

void check_observation(const Observation& obs) {
    if (obs.t < 1) {
        throw Error(ErrorKind::domain, "period index must be >= 1, got t=" + std::to_string(obs.t));
    }
    if (!std::isfinite(obs.population) || obs.population < 0.0) {
        throw Error(ErrorKind::domain, "population at t=" + std::to_string(obs.t) +
                                           " must be finite and non-negative, got " +
                                           detail::shortest(obs.population));
    }
}

// Splits one CSV record. Fields may be double-quoted with "" as the escape.
std::vector<std::string> split_csv_row(std::string_view line, std::size_t line_no) {
    std::vector<std::string> fields;
    std::string current;
    bool quoted = false;
    bool was_quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    current.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                current.push_back(c);
            }
        } else if (c == '"') {
            if (!std::string(detail::trim(current)).empty()) {
                throw ParseError(line_no, "unexpected quote inside unquoted field");
            }
            current.clear();
            quoted = true;
            was_quoted = true;
        } else if (c == ',') {
            fields.push_back(was_quoted ? current : std::string(detail::trim(current)));
            current.clear();
            was_quoted = false;
        } else if (was_quoted) {
            if (c != ' ' && c != '\t') throw ParseError(line_no, "text after closing quote");
        } else {
            current.push_back(c);
        }
    }
    if (quoted) throw ParseError(line_no, "unterminated quoted field");
    fields.push_back(was_quoted ? current : std::string(detail::trim(current)));
    return fields;
}

bool needs_quotes(std::string_view label) {
    return label.find_first_of(",\"\r\n") != std::string_view::npos || label != detail::trim(label);
}

}  // namespace

PopulationSeries::PopulationSeries(std::string center_id, std::vector<Observation> observations)
    : center_id_(std::move(center_id)), observations_(std::move(observations)) {
    if (observations_.empty()) {
        throw Error(ErrorKind::structural, "series has no observations");
    }
    for (std::size_t i = 0; i < observations_.size(); ++i) {
        const auto& obs = observations_[i];
        check_observation(obs);
        if (i == 0) continue;
        const Period expected = observations_[i - 1].t + 1;
        if (obs.t == observations_[i - 1].t) {
            throw Error(ErrorKind::structural, "duplicate t=" + std::to_string(obs.t));
        }
        if (obs.t > expected) {
            throw Error(ErrorKind::structural, "gap at t=" + std::to_string(expected));
        }
        if (obs.t < expected) {
            throw Error(ErrorKind::structural, "t=" + std::to_string(obs.t) + " out of order after t=" +
                                                   std::to_string(observations_[i - 1].t));
        }
    }
}

const Observation& PopulationSeries::at(Period t) const {
    if (!contains(t)) {
        throw Error(ErrorKind::range, "t=" + std::to_string(t) + " outside series range [" +
                                          std::to_string(first_t()) + ", " + std::to_string(last_t()) + "]");
    }
    return observations_[static_cast<std::size_t>(t - first_t())];
}

PopulationSeries PopulationSeries::prefix(Period last) const {
    if (!contains(last)) {
        throw Error(ErrorKind::range, "prefix end t=" + std::to_string(last) + " outside series range [" +
                                          std::to_string(first_t()) + ", " + std::to_string(last_t()) + "]");
    }
    const auto count = static_cast<std::size_t>(last - first_t() + 1);
    return PopulationSeries(center_id_, {observations_.begin(), observations_.begin() + count});
}

PopulationSeries parse_series(std::istream& in, std::string center_id) {
    std::string line;
    std::size_t line_no = 0;
    bool have_header = false;
    std::vector<Observation> rows;

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line_no == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
        if (detail::trim(line).empty()) continue;

        auto fields = split_csv_row(line, line_no);
        if (!have_header) {
            if (fields.size() != 3 || fields[0] != "t" || fields[1] != "period" || fields[2] != "population") {
                throw ParseError(line_no, "expected header 't,period,population'");
            }
            have_header = true;
            continue;
        }
        if (fields.size() != 3) {
            throw ParseError(line_no, "expected 3 fields, found " + std::to_string(fields.size()));
        }
        const auto t = detail::to_integer(fields[0]);
        if (!t) throw ParseError(line_no, "t is not an integer: '" + fields[0] + "'");
        const auto population = detail::to_double(fields[2]);
        if (!population) throw ParseError(line_no, "population is not numeric: '" + fields[2] + "'");
        rows.push_back({*t, std::move(fields[1]), *population});
    }
    if (!have_header) throw Error(ErrorKind::structural, "empty input: missing header");
    if (rows.empty()) throw Error(ErrorKind::structural, "no data rows after header");
    return PopulationSeries(std::move(center_id), std::move(rows));
}

PopulationSeries read_series_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::io, "cannot open " + path.string());
    try {
        return parse_series(in, path.stem().string());
    } catch (const ParseError& e) {
        throw Error(ErrorKind::parse, path.string() + ": " + e.what());
    } catch (const Error& e) {
        throw Error(e.kind(), path.string() + ": " + e.what());
    }
}

void write_series_csv(std::ostream& out, const PopulationSeries& series) {
    out << "t,period,population\n";
    for (const auto& obs : series.observations()) {
        out << obs.t << ',';
        if (needs_quotes(obs.label)) {
            out << '"';
            for (char c : obs.label) {
                if (c == '"') out << '"';
                out << c;
            }
            out << '"';
        } else {
            out << obs.label;
        }
        out << ',' << detail::shortest(obs.population) << '\n';
    }
}

std::span<const Observation> slice_window(const PopulationSeries& series, Period start_t, Period count) {
    if (count < 1) {
        throw Error(ErrorKind::range, "window length must be >= 1, got " + std::to_string(count));
    }
    if (start_t < series.first_t()) {
        throw Error(ErrorKind::range, "window start t=" + std::to_string(start_t) + " precedes first t=" +
                                          std::to_string(series.first_t()));
    }
    const Period end_t = start_t + count - 1;
    if (end_t > series.last_t()) {
        throw Error(ErrorKind::range, "window end t=" + std::to_string(end_t) + " exceeds last t=" +
                                          std::to_string(series.last_t()));
    }
    return series.observations().subspan(static_cast<std::size_t>(start_t - series.first_t()),
                                         static_cast<std::size_t>(count));
}

}  // namespace popcast
