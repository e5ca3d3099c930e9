#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace windnet {

/// Seconds since the Unix epoch, UTC. Negative values are allowed.
using Timestamp = std::int64_t;

/// A span of time in seconds.
using Duration = std::int64_t;

inline constexpr Duration kSecondsPerDay = 86400;

/// Days since 1970-01-01 for a proleptic Gregorian civil date.
std::int64_t days_from_civil(int year, unsigned month, unsigned day);

/// Inverse of days_from_civil.
void civil_from_days(std::int64_t days, int& year, unsigned& month, unsigned& day);

/// Parses "YYYY-MM-DD", "YYYY-MM-DD HH:MM", "YYYY-MM-DDTHH:MM:SS" and the
/// same forms with a trailing 'Z'. Throws ParseError on anything else.
Timestamp parse_iso8601(std::string_view text);

/// Formats as "YYYY-MM-DDTHH:MM:SSZ".
std::string format_iso8601(Timestamp ts);

/// Parses "90s", "10m"/"10min", "6h", "1d" or a bare second count.
Duration parse_duration(std::string_view text);

/// Shortest of "Nd", "Nh", "Nm", "Ns" that is exact.
std::string format_duration(Duration d);

/// Mathematical floor modulo; result is in [0, m) for m > 0.
inline std::int64_t floor_mod(std::int64_t value, std::int64_t m) {
    std::int64_t r = value % m;
    return r < 0 ? r + m : r;
}

/// Largest multiple of m that is <= value.
inline std::int64_t floor_to_multiple(std::int64_t value, std::int64_t m) {
    return value - floor_mod(value, m);
}

}  // namespace windnet
