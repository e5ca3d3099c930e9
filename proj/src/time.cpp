#include "windnet/time.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cstdio>

#include "windnet/errors.hpp"

namespace windnet {

namespace {

bool parse_int(std::string_view text, std::size_t pos, std::size_t len, int& out) {
    if (pos + len > text.size()) return false;
    const char* first = text.data() + pos;
    auto [ptr, ec] = std::from_chars(first, first + len, out);
    return ec == std::errc() && ptr == first + len;
}

}  // namespace

// Howard Hinnant's civil-date algorithms (public domain).
std::int64_t days_from_civil(int year, unsigned month, unsigned day) {
    year -= month <= 2;
    const std::int64_t era = (year >= 0 ? year : year - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(year - era * 400);
    const unsigned doy = (153 * (month + (month > 2 ? -3 : 9)) + 2) / 5 + day - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t days, int& year, unsigned& month, unsigned& day) {
    days += 719468;
    const std::int64_t era = (days >= 0 ? days : days - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(days - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    day = doy - (153 * mp + 2) / 5 + 1;
    month = mp + (mp < 10 ? 3 : -9);
    year = static_cast<int>(y + (month <= 2));
}

Timestamp parse_iso8601(std::string_view text) {
    // Strip a trailing Z; everything is UTC.
    if (!text.empty() && (text.back() == 'Z' || text.back() == 'z')) {
        text.remove_suffix(1);
    }
    int y = 0, mo = 0, d = 0, h = 0, mi = 0, s = 0;
    const bool date_ok = text.size() >= 10 && parse_int(text, 0, 4, y) && text[4] == '-' &&
                         parse_int(text, 5, 2, mo) && text[7] == '-' && parse_int(text, 8, 2, d);
    if (!date_ok) {
        throw ParseError("bad timestamp '" + std::string(text) + "'");
    }
    if (text.size() > 10) {
        if ((text[10] != 'T' && text[10] != ' ') || text.size() < 16 ||
            !parse_int(text, 11, 2, h) || text[13] != ':' || !parse_int(text, 14, 2, mi)) {
            throw ParseError("bad timestamp '" + std::string(text) + "'");
        }
        if (text.size() > 16) {
            if (text.size() != 19 || text[16] != ':' || !parse_int(text, 17, 2, s)) {
                throw ParseError("bad timestamp '" + std::string(text) + "'");
            }
        }
    }
    if (mo < 1 || mo > 12 || d < 1 || d > 31 || h > 23 || mi > 59 || s > 60) {
        throw ParseError("timestamp field out of range in '" + std::string(text) + "'");
    }
    return days_from_civil(y, static_cast<unsigned>(mo), static_cast<unsigned>(d)) *
               kSecondsPerDay +
           h * 3600 + mi * 60 + s;
}

std::string format_iso8601(Timestamp ts) {
    std::int64_t days = ts / kSecondsPerDay;
    std::int64_t sod = ts % kSecondsPerDay;
    if (sod < 0) {
        sod += kSecondsPerDay;
        --days;
    }
    int y;
    unsigned mo, d;
    civil_from_days(days, y, mo, d);
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%04d-%02u-%02uT%02lld:%02lld:%02lldZ", y, mo, d,
                  static_cast<long long>(sod / 3600), static_cast<long long>(sod / 60 % 60),
                  static_cast<long long>(sod % 60));
    return buf;
}

Duration parse_duration(std::string_view text) {
    if (text.empty()) throw ParseError("empty duration");
    std::size_t i = 0;
    while (i < text.size() && (std::isdigit(static_cast<unsigned char>(text[i])) != 0)) ++i;
    if (i == 0) throw ParseError("bad duration '" + std::string(text) + "'");
    std::int64_t value = 0;
    std::from_chars(text.data(), text.data() + i, value);
    const std::string_view unit = text.substr(i);
    std::int64_t scale;
    if (unit.empty() || unit == "s" || unit == "sec") {
        scale = 1;
    } else if (unit == "m" || unit == "min") {
        scale = 60;
    } else if (unit == "h") {
        scale = 3600;
    } else if (unit == "d") {
        scale = kSecondsPerDay;
    } else {
        throw ParseError("bad duration unit '" + std::string(unit) + "'");
    }
    const Duration result = value * scale;
    if (result <= 0) throw ParseError("duration must be positive: '" + std::string(text) + "'");
    return result;
}

std::string format_duration(Duration d) {
    struct Unit {
        std::int64_t scale;
        char suffix;
    };
    static constexpr std::array<Unit, 4> units{{{kSecondsPerDay, 'd'}, {3600, 'h'}, {60, 'm'}, {1, 's'}}};
    for (const auto& u : units) {
        if (d % u.scale == 0) {
            return std::to_string(d / u.scale) + u.suffix;
        }
    }
    return std::to_string(d) + "s";
}

}  // namespace windnet
