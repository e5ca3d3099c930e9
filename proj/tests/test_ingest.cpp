#include <algorithm>
#include <cstdio>
#include <sstream>

#include "doctest.h"

#include "testutil.hpp"
#include "windnet/csvio.hpp"
#include "windnet/errors.hpp"
#include "windnet/ingest.hpp"
#include "windnet/sampling.hpp"

using namespace windnet;

namespace {

CsvSchema ten_minute_schema() {
    CsvSchema schema;
    schema.sample_interval = 600;
    return schema;
}

StationSeries make_series(std::string id, Timestamp start, Duration interval,
                          std::vector<std::optional<double>> values) {
    StationSeries s;
    s.station_id = std::move(id);
    s.start = start;
    s.sample_interval = interval;
    s.values = std::move(values);
    return s;
}

}  // namespace

TEST_CASE("parse: two stations, six rows, three samples each") {
    std::istringstream in(
        "timestamp,station,speed\n"
        "2012-01-01T00:00:00Z,A,1.0\n"
        "2012-01-01T00:10:00Z,A,2.0\n"
        "2012-01-01T00:20:00Z,A,3.0\n"
        "2012-01-01T00:00:00Z,B,4.0\n"
        "2012-01-01T00:10:00Z,B,5.0\n"
        "2012-01-01T00:20:00Z,B,6.0\n");
    const auto series = parse_station_csv(in, ten_minute_schema());
    REQUIRE(series.size() == 2);
    CHECK(series[0].station_id == "A");
    CHECK(series[1].station_id == "B");
    CHECK(series[0].values.size() == 3);
    CHECK(series[1].values.size() == 3);
    CHECK(series[0].values[1] == 2.0);
    CHECK(series[1].values[2] == 6.0);
}

TEST_CASE("parse: a 20-minute gap becomes one missing slot") {
    std::istringstream in(
        "timestamp,station,speed\n"
        "2012-01-01T00:00:00Z,A,1.0\n"
        "2012-01-01T00:20:00Z,A,3.0\n");
    const auto series = parse_station_csv(in, ten_minute_schema());
    REQUIRE(series.size() == 1);
    REQUIRE(series[0].values.size() == 3);
    CHECK(series[0].values[0].has_value());
    CHECK_FALSE(series[0].values[1].has_value());
    CHECK(series[0].values[2].has_value());
}

TEST_CASE("parse: empty value field and sentinel map to missing") {
    CsvSchema schema = ten_minute_schema();
    schema.missing_sentinel = "NA";
    std::istringstream in(
        "timestamp,station,speed\n"
        "2012-01-01T00:00:00Z,A,\n"
        "2012-01-01T00:10:00Z,A,NA\n"
        "2012-01-01T00:20:00Z,A,2.5\n");
    const auto series = parse_station_csv(in, schema);
    REQUIRE(series[0].values.size() == 3);
    CHECK_FALSE(series[0].values[0].has_value());
    CHECK_FALSE(series[0].values[1].has_value());
    CHECK(series[0].values[2] == 2.5);
}

TEST_CASE("parse: a 119-station file yields 119 series") {
    std::ostringstream text;
    text << "timestamp,station,speed\n";
    for (int s = 1; s <= 119; ++s) {
        for (int k = 0; k < 6; ++k) {
            char row[80];
            std::snprintf(row, sizeof(row), "2012-01-01T%02d:%02d:00Z,W%03d,%d.5\n", k / 6,
                          (k * 10) % 60, s, k);
            text << row;
        }
    }
    std::istringstream in(text.str());
    CHECK(parse_station_csv(in, ten_minute_schema()).size() == 119);
}

TEST_CASE("parse errors carry line numbers") {
    SUBCASE("malformed numeric") {
        std::istringstream in(
            "timestamp,station,speed\n"
            "2012-01-01T00:00:00Z,A,abc\n");
        CHECK_THROWS_WITH_AS(parse_station_csv(in, ten_minute_schema()),
                             doctest::Contains("line 2"), ParseError);
    }
    SUBCASE("negative speed") {
        std::istringstream in(
            "timestamp,station,speed\n"
            "2012-01-01T00:00:00Z,A,-1\n");
        CHECK_THROWS_AS(parse_station_csv(in, ten_minute_schema()), ParseError);
    }
    SUBCASE("short row") {
        std::istringstream in(
            "timestamp,station,speed\n"
            "2012-01-01T00:00:00Z,A,1\n"
            "2012-01-01T00:10:00Z\n");
        CHECK_THROWS_WITH_AS(parse_station_csv(in, ten_minute_schema()),
                             doctest::Contains("line 3"), ParseError);
    }
    SUBCASE("off-grid timestamp") {
        std::istringstream in(
            "timestamp,station,speed\n"
            "2012-01-01T00:00:00Z,A,1\n"
            "2012-01-01T00:15:00Z,A,2\n");
        CHECK_THROWS_AS(parse_station_csv(in, ten_minute_schema()), GridError);
    }
    SUBCASE("duplicate observation") {
        std::istringstream in(
            "timestamp,station,speed\n"
            "2012-01-01T00:00:00Z,A,1\n"
            "2012-01-01T00:00:00Z,A,2\n");
        CHECK_THROWS_AS(parse_station_csv(in, ten_minute_schema()), DuplicateError);
    }
    SUBCASE("missing header column") {
        std::istringstream in("time,station,speed\n");
        CHECK_THROWS_AS(parse_station_csv(in, ten_minute_schema()), ParseError);
    }
}

TEST_CASE("round trip: serializing a parsed series and re-parsing is the identity") {
    // Build source CSV text with random observations and gaps, parse it once,
    // then push the result through write + parse again.
    const Timestamp start = parse_iso8601("2012-03-05T07:40:00Z");
    std::ostringstream source;
    source << "timestamp,station,speed\n";
    Rng rng(99);
    for (int s = 0; s < 3; ++s) {
        for (int i = 0; i < 50; ++i) {
            const double roll = rng.unit();
            if (roll < 0.10) continue;  // row absent: a grid gap
            source << format_iso8601(start + s * 600 + i * 600) << ",ST" << s << ",";
            if (roll >= 0.25) {
                source << format_double(10.0 * rng.unit());
            }  // else: explicit missing value
            source << "\n";
        }
    }
    std::istringstream first_pass(source.str());
    const auto original = parse_station_csv(first_pass, ten_minute_schema());
    REQUIRE(original.size() == 3);

    std::ostringstream text;
    write_station_csv(text, original);
    std::istringstream in(text.str());
    const auto parsed = parse_station_csv(in, ten_minute_schema());

    REQUIRE(parsed.size() == original.size());
    for (std::size_t s = 0; s < parsed.size(); ++s) {
        CHECK(parsed[s].station_id == original[s].station_id);
        CHECK(parsed[s].start == original[s].start);
        CHECK(parsed[s].sample_interval == original[s].sample_interval);
        REQUIRE(parsed[s].values.size() == original[s].values.size());
        for (std::size_t i = 0; i < parsed[s].values.size(); ++i) {
            CHECK(parsed[s].values[i] == original[s].values[i]);
        }
    }
}

TEST_CASE("window: 288 ten-minute samples make two full daily panels") {
    std::vector<std::optional<double>> values(288, 1.0);
    const auto panels = window_panel(
        {make_series("A", parse_iso8601("2012-01-01T00:00:00Z"), 600, values)}, kSecondsPerDay);
    REQUIRE(panels.size() == 2);
    CHECK(panels[0].samples_per_window() == 144);
    CHECK(panels[0].columns[0].size() == 144);
    CHECK(panels[1].columns[0].size() == 144);
    CHECK(panels[0].window_start == parse_iso8601("2012-01-01T00:00:00Z"));
    CHECK(panels[1].window_start == parse_iso8601("2012-01-02T00:00:00Z"));
}

TEST_CASE("window: a five-year span yields the oracle's calendar-day count") {
    const long expected = oracle::day_count(2012, 1, 1, 2017, 1, 1);
    CHECK(expected == 1827);  // 2012..2016 includes two leap years

    const auto n = static_cast<std::size_t>(expected) * 4;  // 6-hour sampling
    std::vector<std::optional<double>> values(n, 0.5);
    const auto panels = window_panel(
        {make_series("A", parse_iso8601("2012-01-01T00:00:00Z"), 21600, values)}, kSecondsPerDay);
    CHECK(panels.size() == static_cast<std::size_t>(expected));
}

TEST_CASE("window: empty series set and error paths") {
    CHECK(window_panel({}, kSecondsPerDay).empty());

    std::vector<std::optional<double>> values(288, 1.0);
    const auto a = make_series("A", 0, 600, values);
    const auto b = make_series("B", 0, 300, values);
    CHECK_THROWS_AS(window_panel({a, b}, kSecondsPerDay), IncompatibleError);
    CHECK_THROWS_AS(window_panel({a}, 599), ParamError);
    CHECK_THROWS_AS(window_panel({a}, 0), ParamError);

    // Same interval but misaligned grid phases cannot form a panel.
    const auto c = make_series("C", 300, 600, values);
    CHECK_THROWS_AS(window_panel({a, c}, kSecondsPerDay), IncompatibleError);
}

TEST_CASE("window: partial edge windows are dropped and stations are padded") {
    // A starts mid-day; B covers one day less at the end.
    const Timestamp day1 = parse_iso8601("2012-01-01T00:00:00Z");
    std::vector<std::optional<double>> a_vals(144 * 3, 1.0);  // 05:00 d1 .. 05:00 d4
    std::vector<std::optional<double>> b_vals(144 * 2, 2.0);  // 00:00 d1 .. 00:00 d3
    const auto a = make_series("A", day1 + 5 * 3600, 600, a_vals);
    const auto b = make_series("B", day1, 600, b_vals);

    const auto panels = window_panel({a, b}, kSecondsPerDay);
    // Union span d1 00:00 .. d4 05:00 holds d1, d2, d3 whole; d4 is partial.
    REQUIRE(panels.size() == 3);
    CHECK(panels[0].window_start == day1);
    for (const auto& panel : panels) {
        CHECK(panel.columns[0].size() == 144);
        CHECK(panel.columns[1].size() == 144);
    }
    // B has no data in the last window.
    const auto& b_last = panels[2].columns[1];
    CHECK(std::none_of(b_last.begin(), b_last.end(),
                       [](const std::optional<double>& v) { return v.has_value(); }));
    // A is padded before its 05:00 start on day 1 and present afterwards.
    CHECK_FALSE(panels[0].columns[0][0].has_value());
    CHECK(panels[0].columns[0][5 * 6] == 1.0);
    CHECK(panels[1].columns[0][0] == 1.0);
}

TEST_CASE("window tiling reproduces the input series") {
    // Series share a span that starts and ends off the day boundary.
    const Timestamp day1 = parse_iso8601("2012-06-01T00:00:00Z");
    const Timestamp start = day1 + 7 * 3600 + 300;  // 07:05, off the day boundary grid phase
    Rng rng(4);
    std::vector<StationSeries> series;
    for (int s = 0; s < 2; ++s) {
        std::vector<std::optional<double>> values;
        for (int i = 0; i < 144 * 2 + 110; ++i) {
            values.push_back(rng.unit() < 0.1 ? std::optional<double>{}
                                              : std::optional<double>{rng.unit()});
        }
        series.push_back(make_series("S" + std::to_string(s), start, 600, values));
    }

    const auto panels = window_panel(series, kSecondsPerDay);
    REQUIRE(panels.size() == 2);
    for (std::size_t c = 0; c < series.size(); ++c) {
        // Stitch windows back together and compare against the source slots.
        for (const auto& panel : panels) {
            for (std::size_t j = 0; j < panel.columns[c].size(); ++j) {
                const Timestamp slot_start = panel.window_start + 600 * static_cast<Timestamp>(j);
                // Slot timestamps carry the grid phase of the series.
                const Timestamp ts = slot_start + floor_mod(start - slot_start, 600);
                const auto idx = static_cast<std::size_t>((ts - start) / 600);
                REQUIRE(idx < series[c].values.size());
                CHECK(panel.columns[c][j] == series[c].values[idx]);
            }
        }
    }
}

TEST_CASE("missing report fractions") {
    SUBCASE("complete data is all zeros") {
        std::vector<std::optional<double>> values(288, 1.0);
        const auto report =
            missing_report({make_series("A", 0, 600, values)}, kSecondsPerDay);
        CHECK(report.total_fraction == 0.0);
        CHECK(report.per_station_fraction.at("A") == 0.0);
        for (double f : report.per_window_fraction) CHECK(f == 0.0);
    }
    SUBCASE("one of two equal stations fully missing gives one half") {
        std::vector<std::optional<double>> full(288, 1.0);
        std::vector<std::optional<double>> empty(288, std::nullopt);
        const auto report = missing_report(
            {make_series("A", 0, 600, full), make_series("B", 0, 600, empty)}, kSecondsPerDay);
        CHECK(report.total_fraction == 0.5);
        CHECK(report.per_station_fraction.at("A") == 0.0);
        CHECK(report.per_station_fraction.at("B") == 1.0);
        REQUIRE(report.per_window_fraction.size() == 2);
        CHECK(report.per_window_fraction[0] == 0.5);
    }
    SUBCASE("total equals the length-weighted mean of station fractions") {
        Rng rng(11);
        std::vector<StationSeries> series;
        for (int s = 0; s < 4; ++s) {
            std::vector<std::optional<double>> values;
            const std::size_t len = 144 * (s + 1);
            for (std::size_t i = 0; i < len; ++i) {
                values.push_back(rng.unit() < 0.2 ? std::optional<double>{}
                                                  : std::optional<double>{1.0});
            }
            series.push_back(make_series("S" + std::to_string(s), 0, 600, values));
        }
        const auto report = missing_report(series, kSecondsPerDay);
        double weighted = 0.0, total_len = 0.0;
        for (const auto& s : series) {
            weighted += report.per_station_fraction.at(s.station_id) *
                        static_cast<double>(s.values.size());
            total_len += static_cast<double>(s.values.size());
        }
        CHECK(report.total_fraction == doctest::Approx(weighted / total_len).epsilon(1e-12));
    }
}

TEST_CASE("station metadata parses and is independent of the pipeline") {
    std::istringstream in(
        "station,lat,lon,alt\n"
        "A,46.5,6.6,372\n"
        "B,47.4,8.5,556\n");
    const auto meta = parse_station_meta(in);
    REQUIRE(meta.size() == 2);
    CHECK(meta[1].station == "B");
    CHECK(meta[1].alt == 556.0);
}
