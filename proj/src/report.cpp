#include "popcast/report.hpp"

#include "numfmt.hpp"
#include "popcast/error.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace popcast {

namespace {

std::string fixed2(double value) {
    if (!std::isfinite(value)) return std::string(kMissing);
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.2f", value);
    return buffer;
}

std::string percent1(double fraction) {
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%.1f%%", 100.0 * fraction);
    return buffer;
}

// Human number: 2-decimal rounding followed by the exact value.
std::string human(double value) {
    return fixed2(value) + " (" + format_number(value) + ")";
}

std::string quote_if_needed(std::string_view value) {
    if (!value.empty() && value.find_first_of(" \t\"=") == std::string_view::npos) return std::string(value);
    std::string quoted = "\"";
    for (char c : value) {
        if (c == '"' || c == '\\') quoted.push_back('\\');
        quoted.push_back(c);
    }
    quoted.push_back('"');
    return quoted;
}

std::string tsv_cell(std::string_view text) {
    std::string cell(text);
    for (char& c : cell) {
        if (c == '\t' || c == '\n' || c == '\r') c = ' ';
    }
    return cell;
}

std::string_view boolean(bool b) { return b ? "true" : "false"; }

class StructuredWriter {
public:
    StructuredWriter(std::ostream& out, std::string_view command) : out_(out) {
        out_ << kStructuredMagic << '\n' << "command: " << command << '\n';
    }
    void begin(std::string_view name) { out_ << "section: " << name << '\n'; }
    void end(std::string_view name) { out_ << "end: " << name << '\n'; }
    void field(std::string_view key, std::string_view value) { out_ << key << ": " << value << '\n'; }
    void field(std::string_view key, double value) { field(key, format_number(value)); }
    void field(std::string_view key, Period value) { field(key, std::to_string(value)); }
    void field(std::string_view key, std::size_t value) { field(key, std::to_string(value)); }
    void field(std::string_view key, bool value) { field(key, boolean(value)); }

    void record(const std::vector<std::pair<std::string, std::string>>& values) {
        out_ << "record:";
        for (const auto& [k, v] : values) out_ << ' ' << k << '=' << quote_if_needed(v);
        out_ << '\n';
    }

private:
    std::ostream& out_;
};

void write_line_fields(StructuredWriter& w, std::string_view prefix, const RegressionLine& line,
                       const FitDiagnostics& diag) {
    const std::string p(prefix);
    w.field(p + "_start_t", line.window_start_t);
    w.field(p + "_len", line.window_len);
    w.field(p + "_intercept", line.intercept);
    w.field(p + "_slope", line.slope);
    w.field(p + "_sce", diag.sce);
    w.field(p + "_s_e2", diag.s_e2);
}

std::string describe_line(const RegressionLine& line) {
    std::ostringstream os;
    os << "t=" << line.window_start_t << ".." << (line.window_start_t + static_cast<Period>(line.window_len) - 1)
       << " (" << line.window_len << " periods): P = " << format_number(line.intercept) << " + "
       << format_number(line.slope) << " * t";
    return os.str();
}

double actual_at(const PopulationSeries& series, Period t) {
    return series.contains(t) ? series.at(t).population : std::numeric_limits<double>::quiet_NaN();
}

bool inside(const RegressionLine& line, Period t) {
    return t >= line.window_start_t && t < line.window_start_t + static_cast<Period>(line.window_len);
}

}  // namespace

OutputFormat parse_output_format(std::string_view name) {
    if (name == "human") return OutputFormat::human;
    if (name == "structured") return OutputFormat::structured;
    if (name == "plot-table") return OutputFormat::plot_table;
    throw Error(ErrorKind::domain, "unknown output format '" + std::string(name) +
                                       "' (expected human, structured or plot-table)");
}

std::string format_number(double value) {
    if (!std::isfinite(value)) return std::string(kMissing);
    return detail::shortest(value);
}

double parse_number(std::string_view text) {
    if (detail::trim(text) == kMissing) return std::numeric_limits<double>::quiet_NaN();
    const auto value = detail::to_double(text);
    if (!value) throw Error(ErrorKind::parse, "not a number: '" + std::string(text) + "'");
    return *value;
}

void render_forecast(std::ostream& out, const PopulationSeries& series, const ForecastParams& params,
                     const Forecast& f, OutputFormat format) {
    const double actual = actual_at(series, f.target_t);
    const bool negative_lower = f.lower < 0.0;

    switch (format) {
        case OutputFormat::human: {
            out << "center: " << series.center_id() << '\n'
                << "target period: " << f.target_t << '\n'
                << "point estimate: " << human(f.point) << '\n'
                << "interval (" << format_number(100.0 * params.confidence) << "% confidence): [" << fixed2(f.lower)
                << ", " << fixed2(f.upper) << "]\n"
                << "  lower: " << human(f.lower) << '\n'
                << "  upper: " << human(f.upper) << '\n'
                << "radius: " << human(f.radius) << " (alpha_c " << format_number(params.alpha_c) << ")\n"
                << "  rho_l: " << human(f.rho_l) << '\n'
                << "  rho_c: " << human(f.rho_c) << '\n'
                << "long line:  " << describe_line(f.long_line) << '\n'
                << "short line: " << describe_line(f.short_line) << '\n';
            if (std::isfinite(actual)) {
                out << "actual: " << human(actual) << ' '
                    << (interval_contains(f, actual) ? "(inside interval)" : "(outside interval)") << '\n';
            }
            if (negative_lower) {
                out << "warning: lower bound " << fixed2(f.lower)
                    << " is negative; populations cannot be negative\n";
            }
            break;
        }
        case OutputFormat::structured: {
            StructuredWriter w(out, "forecast");
            w.begin("forecast");
            w.field("center_id", series.center_id());
            w.field("i_l", params.i_l);
            w.field("n_l", params.n_l);
            w.field("n_c", params.n_c);
            w.field("alpha_c", params.alpha_c);
            w.field("confidence", params.confidence);
            w.field("target_t", f.target_t);
            w.field("point", f.point);
            w.field("rho_l", f.rho_l);
            w.field("rho_c", f.rho_c);
            w.field("radius", f.radius);
            w.field("lower", f.lower);
            w.field("upper", f.upper);
            write_line_fields(w, "long", f.long_line, f.long_diagnostics);
            write_line_fields(w, "short", f.short_line, f.short_diagnostics);
            w.field("actual", actual);
            w.field("negative_lower", negative_lower);
            w.end("forecast");
            break;
        }
        case OutputFormat::plot_table: {
            out << "t\tactual\tlong_fit\tshort_fit\tpoint\tlower\tupper\n";
            const std::string na(kMissing);
            for (const auto& obs : series.observations()) {
                if (obs.t >= f.target_t) break;
                if (obs.t < f.long_line.window_start_t) continue;
                out << obs.t << '\t' << format_number(obs.population) << '\t'
                    << (inside(f.long_line, obs.t) ? format_number(f.long_line.at(obs.t)) : na) << '\t'
                    << (inside(f.short_line, obs.t) ? format_number(f.short_line.at(obs.t)) : na) << '\t' << na
                    << '\t' << na << '\t' << na << '\n';
            }
            out << f.target_t << '\t' << format_number(actual) << '\t' << format_number(f.long_line.at(f.target_t))
                << '\t' << format_number(f.short_line.at(f.target_t)) << '\t' << format_number(f.point) << '\t'
                << format_number(f.lower) << '\t' << format_number(f.upper) << '\n';
            break;
        }
    }
}

void render_backtest(std::ostream& out, std::span<const BacktestReport> reports, const BacktestReport& aggregate,
                     OutputFormat format) {
    switch (format) {
        case OutputFormat::human: {
            for (const auto& r : reports) {
                std::size_t clamped = 0;
                std::size_t negative = 0;
                std::string misses;
                for (const auto& rec : r.records) {
                    clamped += rec.short_clamped;
                    negative += rec.forecast.lower < 0.0;
                    if (!rec.hit) misses += (misses.empty() ? "" : ", ") + std::to_string(rec.target_t);
                }
                out << "center " << r.center_id << '\n'
                    << "  runs: " << r.runs << '\n'
                    << "  failures: " << r.failures << " (" << percent1(r.failure_rate) << ")\n";
                if (!misses.empty()) out << "  misses at t: " << misses << '\n';
                if (clamped > 0) out << "  note: short window clamped to long window in " << clamped << " runs\n";
                if (negative > 0) out << "  warning: " << negative << " intervals with negative lower bound\n";
            }
            out << "aggregate (" << reports.size() << (reports.size() == 1 ? " center)\n" : " centers)\n")
                << "runs: " << aggregate.runs << '\n'
                << "failures: " << aggregate.failures << " (" << percent1(aggregate.failure_rate) << ")\n"
                << "coverage: " << percent1(1.0 - aggregate.failure_rate) << '\n';
            break;
        }
        case OutputFormat::structured: {
            StructuredWriter w(out, "backtest");
            for (const auto& r : reports) {
                w.begin("center");
                w.field("center_id", r.center_id);
                w.field("runs", r.runs);
                w.field("failures", r.failures);
                w.field("failure_rate", r.failure_rate);
                for (const auto& rec : r.records) {
                    const auto& f = rec.forecast;
                    w.record({{"target_t", std::to_string(rec.target_t)},
                              {"actual", format_number(rec.actual)},
                              {"point", format_number(f.point)},
                              {"rho_l", format_number(f.rho_l)},
                              {"rho_c", format_number(f.rho_c)},
                              {"radius", format_number(f.radius)},
                              {"lower", format_number(f.lower)},
                              {"upper", format_number(f.upper)},
                              {"hit", std::string(boolean(rec.hit))},
                              {"clamped", std::string(boolean(rec.short_clamped))}});
                }
                w.end("center");
            }
            w.begin("aggregate");
            w.field("center_id", aggregate.center_id);
            w.field("centers", reports.size());
            w.field("runs", aggregate.runs);
            w.field("failures", aggregate.failures);
            w.field("failure_rate", aggregate.failure_rate);
            w.end("aggregate");
            break;
        }
        case OutputFormat::plot_table: {
            out << "center\ttarget_t\tactual\tpoint\tlower\tupper\thit\n";
            for (const auto& r : reports) {
                for (const auto& rec : r.records) {
                    out << tsv_cell(r.center_id) << '\t' << rec.target_t << '\t' << format_number(rec.actual) << '\t'
                        << format_number(rec.forecast.point) << '\t' << format_number(rec.forecast.lower) << '\t'
                        << format_number(rec.forecast.upper) << '\t' << (rec.hit ? 1 : 0) << '\n';
                }
            }
            break;
        }
    }
}

void render_synth(std::ostream& out, const SynthParams& params, std::span<const PopulationSeries> series,
                  std::span<const std::filesystem::path> files, OutputFormat format) {
    switch (format) {
        case OutputFormat::human: {
            out << "generated " << series.size() << " series x " << params.periods << " periods (seed "
                << params.seed << ")\n";
            for (std::size_t i = 0; i < series.size(); ++i) {
                out << "  " << series[i].center_id() << " -> " << files[i].generic_string() << '\n';
            }
            break;
        }
        case OutputFormat::structured: {
            StructuredWriter w(out, "synth");
            w.begin("synth");
            w.field("seed", std::to_string(params.seed));
            w.field("centers", params.centers);
            w.field("periods", params.periods);
            w.field("base", params.base);
            w.field("trend", params.trend);
            w.field("noise", params.noise);
            w.field("shocks", params.shocks);
            w.field("shock_size", params.shock_size);
            for (std::size_t i = 0; i < series.size(); ++i) {
                w.record({{"center_id", series[i].center_id()},
                          {"path", files[i].generic_string()},
                          {"first_t", std::to_string(series[i].first_t())},
                          {"last_t", std::to_string(series[i].last_t())}});
            }
            w.end("synth");
            break;
        }
        case OutputFormat::plot_table: {
            out << "center\tt\tperiod\tpopulation\n";
            for (const auto& s : series) {
                for (const auto& obs : s.observations()) {
                    out << tsv_cell(s.center_id()) << '\t' << obs.t << '\t' << tsv_cell(obs.label) << '\t'
                        << format_number(obs.population) << '\n';
                }
            }
            break;
        }
    }
}

const std::string& StructuredSection::field(std::string_view key) const {
    for (const auto& [k, v] : fields) {
        if (k == key) return v;
    }
    throw Error(ErrorKind::parse, "section '" + name + "' has no field '" + std::string(key) + "'");
}

double StructuredSection::number(std::string_view key) const { return parse_number(field(key)); }

namespace {

std::map<std::string, std::string> parse_record(std::string_view text, std::size_t line_no) {
    std::map<std::string, std::string> record;
    std::size_t i = 0;
    while (true) {
        while (i < text.size() && text[i] == ' ') ++i;
        if (i >= text.size()) break;
        const auto eq = text.find('=', i);
        if (eq == std::string_view::npos) throw ParseError(line_no, "record item without '='");
        std::string key(text.substr(i, eq - i));
        i = eq + 1;
        std::string value;
        if (i < text.size() && text[i] == '"') {
            ++i;
            bool closed = false;
            while (i < text.size()) {
                const char c = text[i++];
                if (c == '\\' && i < text.size()) {
                    value.push_back(text[i++]);
                } else if (c == '"') {
                    closed = true;
                    break;
                } else {
                    value.push_back(c);
                }
            }
            if (!closed) throw ParseError(line_no, "unterminated quoted record value");
        } else {
            const auto space = text.find(' ', i);
            const auto stop = space == std::string_view::npos ? text.size() : space;
            value = std::string(text.substr(i, stop - i));
            i = stop;
        }
        record.emplace(std::move(key), std::move(value));
    }
    return record;
}

}  // namespace

StructuredDocument parse_structured(std::istream& in) {
    StructuredDocument doc;
    StructuredSection* current = nullptr;
    std::string line;
    std::size_t line_no = 0;
    bool have_magic = false;

    while (std::getline(in, line)) {
        ++line_no;
        const auto text = detail::trim(line);
        if (text.empty()) continue;
        if (!have_magic) {
            if (text != kStructuredMagic) throw ParseError(line_no, "missing structured-output marker");
            have_magic = true;
            continue;
        }
        const auto colon = text.find(':');
        if (colon == std::string_view::npos) throw ParseError(line_no, "expected 'key: value'");
        const std::string key(detail::trim(text.substr(0, colon)));
        const std::string value(detail::trim(text.substr(colon + 1)));

        if (key == "section") {
            if (current) throw ParseError(line_no, "nested section '" + value + "'");
            doc.sections.push_back({value, {}, {}});
            current = &doc.sections.back();
        } else if (key == "end") {
            if (!current || current->name != value) throw ParseError(line_no, "unmatched end '" + value + "'");
            current = nullptr;
        } else if (key == "record") {
            if (!current) throw ParseError(line_no, "record outside a section");
            current->records.push_back(parse_record(value, line_no));
        } else {
            (current ? *current : doc.header).fields.emplace_back(key, value);
        }
    }
    if (!have_magic) throw Error(ErrorKind::parse, "empty structured document");
    if (current) throw Error(ErrorKind::parse, "section '" + current->name + "' not closed");
    return doc;
}

}  // namespace popcast
