#include <doctest.h>

#include "popcast/error.hpp"
#include "popcast/statkern.hpp"
#include "popcast/synth.hpp"

#include <cmath>
#include <sstream>

using namespace popcast;

namespace {

std::string dump(const std::vector<PopulationSeries>& all) {
    std::ostringstream os;
    for (const auto& s : all) write_series_csv(os, s);
    return os.str();
}

}  // namespace

TEST_CASE("shape matches the requested centers and periods") {
    SynthParams p;
    p.centers = 16;
    p.periods = 63;
    p.seed = 7;
    const auto all = generate_series(p);
    REQUIRE(all.size() == 16);
    CHECK(all.front().center_id() == "center_01");
    CHECK(all.back().center_id() == "center_16");
    for (const auto& s : all) {
        CHECK(s.size() == 63);
        CHECK(s.first_t() == 1);
        for (const auto& o : s.observations()) CHECK(o.population >= 0.0);
    }
    CHECK(all.front().at(1).label == "2005-01");
    CHECK(all.front().at(12).label == "2005-12");
    CHECK(all.front().at(63).label == "2010-03");
}

TEST_CASE("noise and shocks off give exact lines") {
    SynthParams p;
    p.centers = 4;
    p.periods = 30;
    p.noise = 0;
    p.shocks = 0;
    for (const auto& s : generate_series(p)) {
        const auto fit = fit_ols(s.observations());
        CHECK(fit.diagnostics.sce == 0.0);
        CHECK(fit.line.slope > 0.0);
    }
}

TEST_CASE("seeded determinism") {
    SynthParams p;
    p.centers = 3;
    p.periods = 40;
    CHECK(dump(generate_series(p)) == dump(generate_series(p)));
    SynthParams q = p;
    q.seed = 8;
    CHECK(dump(generate_series(p)) != dump(generate_series(q)));
}

TEST_CASE("shocks produce one-month spikes") {
    SynthParams p;
    p.centers = 1;
    p.periods = 200;
    p.noise = 0;
    p.shocks = 0.1;
    p.shock_size = 50;
    const auto s = generate_series(p).front();
    SynthParams clean = p;
    clean.shocks = 0;
    const auto base = generate_series(clean).front();
    int spikes = 0;
    for (Period t = 1; t <= 200; ++t) {
        const double d = std::fabs(s.at(t).population - base.at(t).population);
        if (d > 0) {
            ++spikes;
            CHECK(d >= 25.0 - 1e-9);
            CHECK(d <= 75.0 + 1e-9);
        }
    }
    CHECK(spikes > 5);
    CHECK(spikes < 50);
}

TEST_CASE("parameter validation") {
    SynthParams p;
    p.centers = 0;
    CHECK_THROWS_AS(generate_series(p), Error);
    p = {};
    p.noise = -1;
    CHECK_THROWS_AS(generate_series(p), Error);
    p = {};
    p.shocks = 1.5;
    CHECK_THROWS_AS(generate_series(p), Error);
}
