#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "popcast/backtest.hpp"
#include "popcast/error.hpp"
#include "popcast/forecast.hpp"
#include "popcast/report.hpp"
#include "popcast/series.hpp"
#include "popcast/statkern.hpp"
#include "popcast/synth.hpp"

#include <sstream>
#include <string>
#include <vector>

#define STRINGIFY(x) #x
#define MACRO_STRINGIFY(x) STRINGIFY(x)

namespace py = pybind11;
using namespace popcast;

namespace {

PopulationSeries series_from_csv(const std::string& text, const std::string& center_id) {
    std::istringstream in(text);
    return parse_series(in, center_id);
}

std::string series_to_csv(const PopulationSeries& series) {
    std::ostringstream out;
    write_series_csv(out, series);
    return out.str();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Dual-window linear regression population forecaster";

    auto base_error = py::register_exception<Error>(m, "PopcastError", PyExc_ValueError);
    py::register_exception<ParseError>(m, "ParseError", base_error.ptr());

    py::class_<Observation>(m, "Observation")
        .def(py::init<>())
        .def(py::init([](Period t, std::string label, double population) {
                 return Observation{t, std::move(label), population};
             }),
             py::arg("t"), py::arg("label"), py::arg("population"))
        .def_readwrite("t", &Observation::t)
        .def_readwrite("label", &Observation::label)
        .def_readwrite("population", &Observation::population)
        .def("__eq__", [](const Observation& a, const Observation& b) { return a == b; })
        .def("__repr__", [](const Observation& o) {
            return "Observation(t=" + std::to_string(o.t) + ", label='" + o.label +
                   "', population=" + format_number(o.population) + ")";
        });

    py::class_<PopulationSeries>(m, "PopulationSeries")
        .def(py::init<std::string, std::vector<Observation>>(), py::arg("center_id"), py::arg("observations"))
        .def_property_readonly("center_id", &PopulationSeries::center_id)
        .def_property_readonly("observations", [](const PopulationSeries& s) {
            return std::vector<Observation>(s.observations().begin(), s.observations().end());
        })
        .def_property_readonly("first_t", &PopulationSeries::first_t)
        .def_property_readonly("last_t", &PopulationSeries::last_t)
        .def("at", &PopulationSeries::at, py::arg("t"))
        .def("prefix", &PopulationSeries::prefix, py::arg("last_t"))
        .def("to_csv", &series_to_csv)
        .def("__len__", &PopulationSeries::size);

    m.def("parse_series", &series_from_csv, py::arg("csv_text"), py::arg("center_id") = "");
    m.def("read_series_file", [](const std::string& path) { return read_series_file(path); }, py::arg("path"));
    m.def(
        "slice_window",
        [](const PopulationSeries& s, Period start_t, Period count) {
            auto w = slice_window(s, start_t, count);
            return std::vector<Observation>(w.begin(), w.end());
        },
        py::arg("series"), py::arg("start_t"), py::arg("count"));

    py::class_<RegressionLine>(m, "RegressionLine")
        .def_readonly("intercept", &RegressionLine::intercept)
        .def_readonly("slope", &RegressionLine::slope)
        .def_readonly("window_start_t", &RegressionLine::window_start_t)
        .def_readonly("window_len", &RegressionLine::window_len)
        .def("at", &RegressionLine::at, py::arg("t"));

    py::class_<FitDiagnostics>(m, "FitDiagnostics")
        .def_readonly("sce", &FitDiagnostics::sce)
        .def_readonly("s_e2", &FitDiagnostics::s_e2)
        .def_readonly("mean_t", &FitDiagnostics::mean_t)
        .def_readonly("sum_t_sq", &FitDiagnostics::sum_t_sq)
        .def_readonly("sxx", &FitDiagnostics::sxx);

    m.def(
        "fit_ols",
        [](const std::vector<Observation>& window) {
            const auto fit = fit_ols(window);
            return py::make_tuple(fit.line, fit.diagnostics);
        },
        py::arg("window"), "Least-squares line over a window; returns (RegressionLine, FitDiagnostics).");
    m.def("t_quantile", &t_quantile, py::arg("df"), py::arg("confidence"),
          "Two-tailed Student-t quantile q with P(|T| <= q) = confidence.");

    py::class_<ForecastParams>(m, "ForecastParams")
        .def(py::init([](Period i_l, Period n_l, Period n_c, double alpha_c, double confidence) {
                 return ForecastParams{i_l, n_l, n_c, alpha_c, confidence};
             }),
             py::arg("i_l"), py::arg("n_l"), py::arg("n_c"), py::arg("alpha_c") = 0.5,
             py::arg("confidence") = 0.9)
        .def_readwrite("i_l", &ForecastParams::i_l)
        .def_readwrite("n_l", &ForecastParams::n_l)
        .def_readwrite("n_c", &ForecastParams::n_c)
        .def_readwrite("alpha_c", &ForecastParams::alpha_c)
        .def_readwrite("confidence", &ForecastParams::confidence)
        .def("validate", &ForecastParams::validate);

    py::class_<Window>(m, "Window")
        .def_readonly("start_t", &Window::start_t)
        .def_readonly("length", &Window::length)
        .def_property_readonly("last_t", &Window::last_t);

    py::class_<WindowPlan>(m, "WindowPlan")
        .def_readonly("long_window", &WindowPlan::long_window)
        .def_readonly("short_window", &WindowPlan::short_window)
        .def_readonly("target_t", &WindowPlan::target_t);

    py::class_<Forecast>(m, "Forecast")
        .def_readonly("target_t", &Forecast::target_t)
        .def_readonly("point", &Forecast::point)
        .def_readonly("rho_l", &Forecast::rho_l)
        .def_readonly("rho_c", &Forecast::rho_c)
        .def_readonly("radius", &Forecast::radius)
        .def_readonly("lower", &Forecast::lower)
        .def_readonly("upper", &Forecast::upper)
        .def_readonly("long_line", &Forecast::long_line)
        .def_readonly("short_line", &Forecast::short_line)
        .def_readonly("long_diagnostics", &Forecast::long_diagnostics)
        .def_readonly("short_diagnostics", &Forecast::short_diagnostics)
        .def_readonly("windows", &Forecast::windows);

    m.def("resolve_windows", &resolve_windows, py::arg("params"), py::arg("series"));
    m.def("point_estimate", &point_estimate, py::arg("long_line"), py::arg("short_line"), py::arg("target_t"),
          py::arg("alpha_c"));
    m.def("interval_radius", &interval_radius, py::arg("line"), py::arg("diagnostics"), py::arg("target_t"),
          py::arg("confidence"));
    m.def("forecast_next", &forecast_next, py::arg("series"), py::arg("params"));

    py::class_<BacktestProtocol>(m, "BacktestProtocol")
        .def(py::init([](Period i_l, Period n_c, double alpha_c, double confidence, Period first, Period last) {
                 return BacktestProtocol{i_l, n_c, alpha_c, confidence, first, last};
             }),
             py::arg("i_l"), py::arg("n_c"), py::arg("alpha_c"), py::arg("confidence"), py::arg("first_target_t"),
             py::arg("last_target_t"))
        .def_readwrite("i_l", &BacktestProtocol::i_l)
        .def_readwrite("n_c", &BacktestProtocol::n_c)
        .def_readwrite("alpha_c", &BacktestProtocol::alpha_c)
        .def_readwrite("confidence", &BacktestProtocol::confidence)
        .def_readwrite("first_target_t", &BacktestProtocol::first_target_t)
        .def_readwrite("last_target_t", &BacktestProtocol::last_target_t);

    py::class_<BacktestRecord>(m, "BacktestRecord")
        .def_readonly("target_t", &BacktestRecord::target_t)
        .def_readonly("actual", &BacktestRecord::actual)
        .def_readonly("forecast", &BacktestRecord::forecast)
        .def_readonly("hit", &BacktestRecord::hit)
        .def_readonly("short_clamped", &BacktestRecord::short_clamped);

    py::class_<BacktestReport>(m, "BacktestReport")
        .def_readonly("center_id", &BacktestReport::center_id)
        .def_readonly("records", &BacktestReport::records)
        .def_readonly("runs", &BacktestReport::runs)
        .def_readonly("failures", &BacktestReport::failures)
        .def_readonly("failure_rate", &BacktestReport::failure_rate);

    m.def("run_backtest", &run_backtest, py::arg("series"), py::arg("protocol"),
          py::call_guard<py::gil_scoped_release>());
    m.def("aggregate_reports", [](const std::vector<BacktestReport>& reports) { return aggregate_reports(reports); },
          py::arg("reports"));

    py::class_<SynthParams>(m, "SynthParams")
        .def(py::init<>())
        .def_readwrite("centers", &SynthParams::centers)
        .def_readwrite("periods", &SynthParams::periods)
        .def_readwrite("seed", &SynthParams::seed)
        .def_readwrite("base", &SynthParams::base)
        .def_readwrite("trend", &SynthParams::trend)
        .def_readwrite("noise", &SynthParams::noise)
        .def_readwrite("shocks", &SynthParams::shocks)
        .def_readwrite("shock_size", &SynthParams::shock_size)
        .def_readwrite("start_year", &SynthParams::start_year);
    m.def("generate_series", &generate_series, py::arg("params"));

#ifdef VERSION_INFO
    m.attr("__version__") = MACRO_STRINGIFY(VERSION_INFO);
#else
    m.attr("__version__") = "dev";
#endif
}
