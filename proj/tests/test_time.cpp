#include "doctest.h"

#include "testutil.hpp"
#include "windnet/errors.hpp"
#include "windnet/time.hpp"

using namespace windnet;

TEST_CASE("iso8601 parse and format round trip") {
    CHECK(parse_iso8601("1970-01-01T00:00:00Z") == 0);
    CHECK(parse_iso8601("1970-01-02") == 86400);
    CHECK(parse_iso8601("2012-01-01T00:00:00Z") == 1325376000);
    CHECK(parse_iso8601("2012-01-01 00:10") == 1325376000 + 600);
    CHECK(format_iso8601(1325376000) == "2012-01-01T00:00:00Z");

    for (Timestamp ts : {Timestamp{0}, Timestamp{-1}, Timestamp{1325376000},
                         Timestamp{4102444799}, Timestamp{951827696}}) {
        CHECK(parse_iso8601(format_iso8601(ts)) == ts);
    }
}

TEST_CASE("iso8601 rejects malformed input") {
    CHECK_THROWS_AS(parse_iso8601("not-a-date"), ParseError);
    CHECK_THROWS_AS(parse_iso8601("2012-13-01"), ParseError);
    CHECK_THROWS_AS(parse_iso8601("2012-01-01T25:00"), ParseError);
    CHECK_THROWS_AS(parse_iso8601("2012-01-01T00"), ParseError);
    CHECK_THROWS_AS(parse_iso8601(""), ParseError);
}

TEST_CASE("civil date arithmetic matches a day-stepping oracle") {
    CHECK(days_from_civil(1970, 1, 1) == 0);
    CHECK(days_from_civil(2017, 1, 1) - days_from_civil(2012, 1, 1) ==
          oracle::day_count(2012, 1, 1, 2017, 1, 1));
    CHECK(days_from_civil(2016, 3, 1) - days_from_civil(2016, 2, 1) == 29);  // leap year
    CHECK(days_from_civil(2100, 3, 1) - days_from_civil(2100, 2, 1) == 28);  // century rule

    int y;
    unsigned m, d;
    civil_from_days(days_from_civil(2016, 2, 29), y, m, d);
    CHECK(y == 2016);
    CHECK(m == 2);
    CHECK(d == 29);
}

TEST_CASE("duration parsing") {
    CHECK(parse_duration("600") == 600);
    CHECK(parse_duration("600s") == 600);
    CHECK(parse_duration("10m") == 600);
    CHECK(parse_duration("10min") == 600);
    CHECK(parse_duration("6h") == 21600);
    CHECK(parse_duration("1d") == 86400);
    CHECK(format_duration(86400) == "1d");
    CHECK(format_duration(600) == "10m");
    CHECK(format_duration(90) == "90s");
    CHECK_THROWS_AS(parse_duration("1w"), ParseError);
    CHECK_THROWS_AS(parse_duration("0s"), ParseError);
    CHECK_THROWS_AS(parse_duration("abc"), ParseError);
}

TEST_CASE("floor helpers") {
    CHECK(floor_mod(-1, 86400) == 86399);
    CHECK(floor_mod(86401, 86400) == 1);
    CHECK(floor_to_multiple(-1, 86400) == -86400);
    CHECK(floor_to_multiple(86401, 86400) == 86400);
}
