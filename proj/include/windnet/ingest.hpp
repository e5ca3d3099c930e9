#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "windnet/series.hpp"

namespace windnet {

/// Column layout and grid declaration for station CSV input.
struct CsvSchema {
    std::string timestamp_column = "timestamp";
    std::string station_column = "station";
    std::string value_column = "speed";
    Duration sample_interval = 600;
    /// An extra token treated as missing besides the empty field ("" disables).
    std::string missing_sentinel;
};

/// Optional per-station metadata; carried through to outputs, never used
/// in any computation.
struct StationMeta {
    std::string station;
    double lat = 0.0;
    double lon = 0.0;
    double alt = 0.0;
};

/// Parses long-format CSV (one observation per row) into one series per
/// station, sorted by station id. Each station's grid is anchored at its
/// earliest timestamp; rows off the declared grid raise GridError, repeated
/// (station, timestamp) slots raise DuplicateError, and unfillable rows
/// raise ParseError with the offending line number. Grid slots with no row
/// become missing entries.
std::vector<StationSeries> parse_station_csv(std::istream& in, const CsvSchema& schema);

/// Inverse of parse_station_csv: long-format rows sorted by (station, time),
/// missing entries written with an empty value field.
void write_station_csv(std::ostream& out, const std::vector<StationSeries>& series,
                       const CsvSchema& schema = {});

std::vector<StationMeta> parse_station_meta(std::istream& in);

/// Cuts the union time span of all series into consecutive windows aligned
/// to multiples of window_length (UTC calendar days for 1d windows) shifted
/// by align_offset. Partial windows at either edge are dropped; stations not
/// covering a window are padded with missing values. Series must share
/// sample_interval and grid phase.
std::vector<WindowedPanel> window_panel(const std::vector<StationSeries>& series,
                                        Duration window_length,
                                        Duration align_offset = 0);

/// Missing-entry fractions per station (over each station's own span), per
/// window (over the window_panel tiling, padding counted), and in total
/// (missing entries / total entries over all series).
MissingnessReport missing_report(const std::vector<StationSeries>& series,
                                 Duration window_length,
                                 Duration align_offset = 0);

}  // namespace windnet
