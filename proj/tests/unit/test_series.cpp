#include <doctest.h>

#include "popcast/error.hpp"
#include "popcast/series.hpp"
#include "support/test_util.hpp"

#include <random>
#include <sstream>

using namespace popcast;

namespace {

PopulationSeries parse(const std::string& text) {
    std::istringstream in(text);
    return parse_series(in, "c");
}

ErrorKind kind_of(const std::string& text) {
    try {
        parse(text);
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an error");
    return ErrorKind::io;
}

std::string message_of(const std::string& text) {
    try {
        parse(text);
    } catch (const Error& e) {
        return e.what();
    }
    return {};
}

}  // namespace

TEST_CASE("minimal well-formed file") {
    const auto s = parse("t,period,population\n1,2005-enero,100\n2,2005-febrero,103\n");
    REQUIRE(s.size() == 2);
    CHECK(s.first_t() == 1);
    CHECK(s.last_t() == 2);
    CHECK(s.at(2).label == "2005-febrero");
    CHECK(s.at(2).population == 103.0);
    CHECK(s.center_id() == "c");
}

TEST_CASE("gap in t is a structural error naming the missing period") {
    const std::string text = "t,period,population\n1,a,1\n2,b,2\n4,d,4\n";
    CHECK(kind_of(text) == ErrorKind::structural);
    CHECK(message_of(text).find("gap at t=3") != std::string::npos);
}

TEST_CASE("duplicate and out-of-order t") {
    CHECK(kind_of("t,period,population\n1,a,1\n1,b,2\n") == ErrorKind::structural);
    CHECK(kind_of("t,period,population\n2,a,1\n1,b,2\n") == ErrorKind::structural);
}

TEST_CASE("63-row file") {
    std::ostringstream os;
    os << "t,period,population\n";
    for (int t = 1; t <= 63; ++t) os << t << ",m" << t << ',' << 100 + t % 7 << '\n';
    const auto s = parse(os.str());
    CHECK(s.size() == 63);
    CHECK(s.last_t() == 63);
}

TEST_CASE("malformed rows carry the line number") {
    try {
        parse("t,period,population\n1,a,1\n2,b\n");
        FAIL("no throw");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
        CHECK(e.kind() == ErrorKind::parse);
    }
    CHECK(kind_of("t,period,population\nx,a,1\n") == ErrorKind::parse);
    CHECK(kind_of("t,period,population\n1.5,a,1\n") == ErrorKind::parse);
    CHECK(kind_of("t,period,population\n1,a,abc\n") == ErrorKind::parse);
    CHECK(kind_of("t,period,population\n1,\"a,1\n") == ErrorKind::parse);
    CHECK(kind_of("time,label,value\n1,a,1\n") == ErrorKind::parse);
}

TEST_CASE("value domain") {
    CHECK(kind_of("t,period,population\n1,a,-1\n") == ErrorKind::domain);
    CHECK(kind_of("t,period,population\n1,a,nan\n") == ErrorKind::domain);
    CHECK(kind_of("t,period,population\n1,a,inf\n") == ErrorKind::domain);
    CHECK(kind_of("t,period,population\n0,a,1\n") == ErrorKind::domain);
}

TEST_CASE("empty input") {
    CHECK(kind_of("") == ErrorKind::structural);
    CHECK(kind_of("t,period,population\n") == ErrorKind::structural);
    CHECK(kind_of("t,period,population\n\n\n") == ErrorKind::structural);
}

TEST_CASE("CRLF, BOM, quoted labels, fractional populations, arbitrary start") {
    const auto s = parse("\xEF\xBB\xBFt,period,population\r\n5,\"2005, mayo\",100.5\r\n6,\"say \"\"hi\"\"\",0\r\n");
    REQUIRE(s.size() == 2);
    CHECK(s.first_t() == 5);
    CHECK(s.at(5).label == "2005, mayo");
    CHECK(s.at(5).population == 100.5);
    CHECK(s.at(6).label == "say \"hi\"");
}

TEST_CASE("csv round trip preserves every field") {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> pop(0.0, 5000.0);
    const std::vector<std::string> labels = {"2005-enero", "a,b", "quote\"d", " padded ", "plain"};
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<Observation> rows;
        const Period start = 1 + static_cast<Period>(rng() % 100);
        const auto n = 1 + rng() % 40;
        for (std::size_t i = 0; i < n; ++i) {
            rows.push_back({start + static_cast<Period>(i), labels[rng() % labels.size()], pop(rng)});
        }
        const PopulationSeries original("c", rows);
        std::ostringstream os;
        write_series_csv(os, original);
        const auto back = parse(os.str());
        CHECK(std::equal(back.observations().begin(), back.observations().end(), original.observations().begin(),
                         original.observations().end()));
    }
}

TEST_CASE("slice_window") {
    const auto s = testing::linear_series(10, 1, 63);
    auto w = slice_window(s, 1, 10);
    REQUIRE(w.size() == 10);
    CHECK(w.front().t == 1);
    CHECK(w.back().t == 10);

    w = slice_window(s, 5, 6);
    REQUIRE(w.size() == 6);
    CHECK(w.front().t == 5);
    CHECK(w.back().t == 10);

    const auto short_series = testing::linear_series(10, 1, 10);
    try {
        slice_window(short_series, 8, 6);
        FAIL("no throw");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::range);
        CHECK(std::string(e.what()).find("t=13") != std::string::npos);
    }
    CHECK_THROWS_AS(slice_window(short_series, 0, 3), Error);
    CHECK_THROWS_AS(slice_window(short_series, 1, 0), Error);
}

TEST_CASE("slice_window yields consecutive periods for every in-range window") {
    const auto s = testing::linear_series(3, 2, 30, 4);
    for (Period a = s.first_t(); a <= s.last_t(); ++a) {
        for (Period n = 1; a + n - 1 <= s.last_t(); ++n) {
            const auto w = slice_window(s, a, n);
            REQUIRE(static_cast<Period>(w.size()) == n);
            for (Period i = 0; i < n; ++i) CHECK(w[static_cast<std::size_t>(i)].t == a + i);
        }
    }
}

TEST_CASE("prefix and at") {
    const auto s = testing::linear_series(0, 1, 10);
    const auto p = s.prefix(4);
    CHECK(p.size() == 4);
    CHECK(p.last_t() == 4);
    CHECK_THROWS_AS(s.prefix(11), Error);
    CHECK_THROWS_AS(s.at(0), Error);
}
