#include "popcast/cli.hpp"

#include "popcast/backtest.hpp"
#include "popcast/error.hpp"
#include "popcast/forecast.hpp"
#include "popcast/report.hpp"
#include "popcast/series.hpp"
#include "popcast/synth.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "numfmt.hpp"

namespace popcast {

namespace fs = std::filesystem;

namespace {

struct Options {
    std::vector<std::string> inputs;
    std::string output;
    std::string format = "human";

    Period il = 1;
    std::optional<Period> nl;
    Period nc = 6;
    double alpha_c = 0.5;
    double confidence = 0.9;
    std::string targets;

    SynthParams synth;
};

std::vector<fs::path> expand_inputs(const std::vector<std::string>& inputs) {
    std::vector<fs::path> files;
    for (const auto& item : inputs) {
        const fs::path path(item);
        std::error_code ec;
        if (fs::is_directory(path, ec)) {
            std::vector<fs::path> found;
            for (const auto& entry : fs::directory_iterator(path)) {
                if (entry.is_regular_file() && entry.path().extension() == ".csv") found.push_back(entry.path());
            }
            std::sort(found.begin(), found.end());
            if (found.empty()) throw Error(ErrorKind::io, "no .csv files in directory " + item);
            files.insert(files.end(), found.begin(), found.end());
        } else if (fs::exists(path, ec)) {
            files.push_back(path);
        } else {
            throw Error(ErrorKind::io, "input not found: " + item);
        }
    }
    return files;
}

std::pair<Period, Period> parse_targets(const std::string& text) {
    const auto dots = text.find("..");
    if (dots != std::string::npos) {
        const auto first = detail::to_integer(std::string_view(text).substr(0, dots));
        const auto last = detail::to_integer(std::string_view(text).substr(dots + 2));
        if (first && last) return {*first, *last};
    }
    throw Error(ErrorKind::domain, "--targets expects A..B, got '" + text + "'");
}

// Writes to --output when given, otherwise to `out`.
template <typename Render>
void emit(const Options& opts, std::ostream& out, Render&& render) {
    if (opts.output.empty()) {
        render(out);
        return;
    }
    std::ofstream file(opts.output, std::ios::binary);
    if (!file) throw Error(ErrorKind::io, "cannot write " + opts.output);
    render(file);
    if (!file) throw Error(ErrorKind::io, "write failed: " + opts.output);
}

int cmd_forecast(const Options& opts, std::ostream& out, std::ostream& err) {
    const auto format = parse_output_format(opts.format);
    const auto files = expand_inputs(opts.inputs);
    if (files.size() != 1) throw Error(ErrorKind::domain, "forecast takes exactly one series file");
    const auto series = read_series_file(files.front());

    ForecastParams params;
    params.i_l = opts.il;
    params.n_l = opts.nl ? *opts.nl : series.last_t() - opts.il + 1;
    params.n_c = opts.nc;
    params.alpha_c = opts.alpha_c;
    params.confidence = opts.confidence;

    const Forecast forecast = forecast_next(series, params);
    emit(opts, out, [&](std::ostream& os) { render_forecast(os, series, params, forecast, format); });
    if (forecast.lower < 0.0 && (format != OutputFormat::human || !opts.output.empty())) {
        err << "warning: lower bound " << format_number(forecast.lower)
            << " is negative; populations cannot be negative\n";
    }
    return 0;
}

int cmd_backtest(const Options& opts, std::ostream& out) {
    const auto format = parse_output_format(opts.format);
    std::vector<PopulationSeries> series;
    for (const auto& file : expand_inputs(opts.inputs)) series.push_back(read_series_file(file));

    std::optional<std::pair<Period, Period>> targets;
    if (!opts.targets.empty()) targets = parse_targets(opts.targets);

    std::vector<BacktestProtocol> protocols;
    for (const auto& s : series) {
        BacktestProtocol p;
        p.i_l = opts.il;
        p.n_c = opts.nc;
        p.alpha_c = opts.alpha_c;
        p.confidence = opts.confidence;
        p.first_target_t = targets ? targets->first : opts.il + std::max<Period>(opts.nc, 3);
        p.last_target_t = targets ? targets->second : s.last_t();
        protocols.push_back(p);
    }

    const auto reports = run_backtests(series, protocols);
    const auto aggregate = aggregate_reports(reports);
    emit(opts, out, [&](std::ostream& os) { render_backtest(os, reports, aggregate, format); });
    return 0;
}

int cmd_synth(const Options& opts, std::ostream& out) {
    const auto format = parse_output_format(opts.format);
    if (opts.output.empty()) throw Error(ErrorKind::domain, "synth requires --output <directory>");
    const auto generated = generate_series(opts.synth);

    const fs::path dir(opts.output);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) throw Error(ErrorKind::io, "cannot create output directory " + opts.output);

    std::vector<fs::path> files;
    for (const auto& s : generated) {
        const auto path = dir / (s.center_id() + ".csv");
        std::ofstream file(path, std::ios::binary);
        if (!file) throw Error(ErrorKind::io, "cannot write " + path.string());
        write_series_csv(file, s);
        if (!file) throw Error(ErrorKind::io, "write failed: " + path.string());
        files.push_back(path);
    }
    render_synth(out, opts.synth, generated, files, format);
    return 0;
}

void add_forecast_flags(CLI::App& cmd, Options& opts) {
    cmd.add_option("--il", opts.il, "First period of the long window (I_L)")->capture_default_str();
    cmd.add_option("--nc", opts.nc, "Short window length (N_C)")->capture_default_str();
    cmd.add_option("--alpha-c", opts.alpha_c, "Weight of the short-window estimate (alpha_C)")
        ->capture_default_str();
    cmd.add_option("--confidence", opts.confidence, "Two-sided interval confidence")->capture_default_str();
    cmd.add_option("--format", opts.format, "human | structured | plot-table")->capture_default_str();
}

}  // namespace

int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
    Options opts;
    CLI::App app{"Dual-window linear regression population forecaster", "popcast"};
    app.require_subcommand(1);

    auto* forecast = app.add_subcommand("forecast", "Forecast the period after the long window");
    forecast->add_option("--input", opts.inputs, "Series CSV file")->required();
    forecast->add_option("--nl", opts.nl, "Long window length (N_L); default spans to the last observation");
    forecast->add_option("--output", opts.output, "Write the report here instead of stdout");
    add_forecast_flags(*forecast, opts);

    auto* backtest = app.add_subcommand("backtest", "Rolling-origin backtest of interval coverage");
    backtest->add_option("--input", opts.inputs, "Series CSV files or directories")->required();
    backtest->add_option("--targets", opts.targets, "Target periods A..B");
    backtest->add_option("--output", opts.output, "Write the report here instead of stdout");
    add_forecast_flags(*backtest, opts);

    auto* synth = app.add_subcommand("synth", "Generate synthetic center series");
    synth->add_option("--output", opts.output, "Output directory")->required();
    synth->add_option("--seed", opts.synth.seed)->capture_default_str();
    synth->add_option("--centers", opts.synth.centers)->capture_default_str();
    synth->add_option("--periods", opts.synth.periods)->capture_default_str();
    synth->add_option("--base", opts.synth.base, "Nominal level at t=1")->capture_default_str();
    synth->add_option("--trend", opts.synth.trend, "Nominal persons per period")->capture_default_str();
    synth->add_option("--noise", opts.synth.noise, "Gaussian noise standard deviation")->capture_default_str();
    synth->add_option("--shocks", opts.synth.shocks, "Per-period shock probability")->capture_default_str();
    synth->add_option("--shock-size", opts.synth.shock_size, "Nominal shock magnitude")->capture_default_str();
    synth->add_option("--start-year", opts.synth.start_year, "Year of the t=1 label")->capture_default_str();
    synth->add_option("--format", opts.format, "human | structured | plot-table")->capture_default_str();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    try {
        if (forecast->parsed()) return cmd_forecast(opts, out, err);
        if (backtest->parsed()) return cmd_backtest(opts, out);
        return cmd_synth(opts, out);
    } catch (const Error& e) {
        err << "popcast: " << to_string(e.kind()) << ": " << e.what() << '\n';
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        err << "popcast: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace popcast
