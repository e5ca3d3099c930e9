#include "windnet/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "windnet/csvio.hpp"
#include "windnet/errors.hpp"

namespace windnet {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string token;
    for (char ch : line) {
        if (ch == ',') {
            fields.push_back(token);
            token.clear();
        } else if (ch != '\r') {
            token.push_back(ch);
        }
    }
    fields.push_back(token);
    return fields;
}

std::string trim(const std::string& value) {
    const auto first = value.find_first_not_of(" \t");
    if (first == std::string::npos) return {};
    const auto last = value.find_last_not_of(" \t");
    return value.substr(first, last - first + 1);
}

std::size_t find_column(const std::vector<std::string>& header, const std::string& name,
                        const char* what) {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (trim(header[i]) == name) return i;
    }
    throw ParseError(std::string("missing ") + what + " column '" + name + "' in CSV header");
}

double parse_value(const std::string& text, std::size_t line) {
    double v = 0.0;
    const char* first = text.data();
    const char* last = first + text.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last) {
        throw ParseError("bad numeric value '" + text + "'", line);
    }
    return v;
}

struct Observation {
    Timestamp ts;
    std::optional<double> value;
    std::size_t line;
};

}  // namespace

std::vector<StationSeries> parse_station_csv(std::istream& in, const CsvSchema& schema) {
    if (schema.sample_interval <= 0) {
        throw ParamError("sample_interval must be positive");
    }
    std::string line;
    if (!std::getline(in, line)) {
        throw ParseError("empty input: no CSV header");
    }
    const auto header = split_csv_line(line);
    const std::size_t ts_col = find_column(header, schema.timestamp_column, "timestamp");
    const std::size_t st_col = find_column(header, schema.station_column, "station");
    const std::size_t val_col = find_column(header, schema.value_column, "value");
    const std::size_t need = std::max({ts_col, st_col, val_col}) + 1;

    std::map<std::string, std::vector<Observation>> rows;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        const auto fields = split_csv_line(line);
        if (fields.size() < need) {
            throw ParseError("row has " + std::to_string(fields.size()) + " fields, expected >= " +
                                 std::to_string(need),
                             line_no);
        }
        Timestamp ts;
        try {
            ts = parse_iso8601(trim(fields[ts_col]));
        } catch (const ParseError& e) {
            throw ParseError(std::string(e.what()), line_no);
        }
        const std::string station = trim(fields[st_col]);
        if (station.empty()) {
            throw ParseError("empty station id", line_no);
        }
        const std::string raw = trim(fields[val_col]);
        std::optional<double> value;
        if (!raw.empty() && !(raw == schema.missing_sentinel && !schema.missing_sentinel.empty())) {
            const double v = parse_value(raw, line_no);
            if (v < 0.0) {
                throw ParseError("negative speed " + raw, line_no);
            }
            value = v;
        }
        rows[station].push_back({ts, value, line_no});
    }

    std::vector<StationSeries> out;
    out.reserve(rows.size());
    for (auto& [station, obs] : rows) {
        Timestamp anchor = std::numeric_limits<Timestamp>::max();
        Timestamp last = std::numeric_limits<Timestamp>::min();
        for (const auto& o : obs) {
            anchor = std::min(anchor, o.ts);
            last = std::max(last, o.ts);
        }
        for (const auto& o : obs) {
            if ((o.ts - anchor) % schema.sample_interval != 0) {
                throw GridError("station " + station + ": timestamp " + format_iso8601(o.ts) +
                                " off the " + format_duration(schema.sample_interval) +
                                " grid (line " + std::to_string(o.line) + ")");
            }
        }
        StationSeries s;
        s.station_id = station;
        s.sample_interval = schema.sample_interval;
        s.start = anchor;
        s.values.assign(static_cast<std::size_t>((last - anchor) / schema.sample_interval) + 1,
                        std::nullopt);
        std::vector<std::uint8_t> seen(s.values.size(), 0);
        for (const auto& o : obs) {
            const auto slot = static_cast<std::size_t>((o.ts - anchor) / schema.sample_interval);
            if (seen[slot]) {
                throw DuplicateError("duplicate observation for station " + station + " at " +
                                     format_iso8601(o.ts) + " (line " + std::to_string(o.line) +
                                     ")");
            }
            seen[slot] = 1;
            s.values[slot] = o.value;
        }
        out.push_back(std::move(s));
    }
    return out;
}

void write_station_csv(std::ostream& out, const std::vector<StationSeries>& series,
                       const CsvSchema& schema) {
    out << schema.timestamp_column << ',' << schema.station_column << ',' << schema.value_column
        << '\n';
    for (const auto& s : series) {
        for (std::size_t i = 0; i < s.values.size(); ++i) {
            out << format_iso8601(s.start + static_cast<Timestamp>(i) * s.sample_interval) << ','
                << s.station_id << ',';
            if (s.values[i].has_value()) {
                out << format_double(*s.values[i]);
            }
            out << '\n';
        }
    }
}

std::vector<StationMeta> parse_station_meta(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) {
        throw ParseError("empty station metadata: no CSV header");
    }
    const auto header = split_csv_line(line);
    const std::size_t st = find_column(header, "station", "station");
    const std::size_t lat = find_column(header, "lat", "lat");
    const std::size_t lon = find_column(header, "lon", "lon");
    const std::size_t alt = find_column(header, "alt", "alt");
    const std::size_t need = std::max({st, lat, lon, alt}) + 1;

    std::vector<StationMeta> out;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        const auto fields = split_csv_line(line);
        if (fields.size() < need) {
            throw ParseError("short metadata row", line_no);
        }
        StationMeta m;
        m.station = trim(fields[st]);
        m.lat = parse_value(trim(fields[lat]), line_no);
        m.lon = parse_value(trim(fields[lon]), line_no);
        m.alt = parse_value(trim(fields[alt]), line_no);
        out.push_back(std::move(m));
    }
    return out;
}

namespace {

struct Tiling {
    Duration interval = 0;
    Duration phase = 0;  // grid offset, in [0, interval)
    Timestamp first_window = 0;
    std::size_t window_count = 0;
};

Tiling plan_windows(const std::vector<StationSeries>& series, Duration window_length,
                    Duration align_offset) {
    if (window_length <= 0) {
        throw ParamError("window length must be positive");
    }
    Tiling t;
    if (series.empty()) return t;

    t.interval = series.front().sample_interval;
    for (const auto& s : series) {
        if (s.sample_interval != t.interval) {
            throw IncompatibleError("mixed sample intervals: " + format_duration(t.interval) +
                                    " vs " + format_duration(s.sample_interval) + " (station " +
                                    s.station_id + ")");
        }
    }
    if (window_length < t.interval || window_length % t.interval != 0) {
        throw ParamError("window length " + format_duration(window_length) +
                         " is not a positive multiple of the sample interval " +
                         format_duration(t.interval));
    }
    if (floor_mod(align_offset, t.interval) != 0) {
        throw ParamError("alignment offset must be a multiple of the sample interval");
    }
    t.phase = floor_mod(series.front().start, t.interval);
    Timestamp span_start = std::numeric_limits<Timestamp>::max();
    Timestamp span_end = std::numeric_limits<Timestamp>::min();
    for (const auto& s : series) {
        if (floor_mod(s.start, t.interval) != t.phase) {
            throw IncompatibleError("station " + s.station_id +
                                    " is on a different grid phase than station " +
                                    series.front().station_id);
        }
        span_start = std::min(span_start, s.start);
        span_end = std::max(span_end, s.end());
    }

    // First whole window at or after the span start.
    Timestamp w0 = floor_to_multiple(span_start - align_offset, window_length) + align_offset;
    if (w0 < span_start) w0 += window_length;
    t.first_window = w0;
    if (w0 + window_length <= span_end) {
        t.window_count = static_cast<std::size_t>((span_end - w0) / window_length);
    }
    return t;
}

}  // namespace

std::vector<WindowedPanel> window_panel(const std::vector<StationSeries>& series,
                                        Duration window_length, Duration align_offset) {
    const Tiling t = plan_windows(series, window_length, align_offset);
    std::vector<WindowedPanel> panels;
    if (t.window_count == 0) return panels;

    const auto slots = static_cast<std::size_t>(window_length / t.interval);
    std::vector<std::string> ids;
    ids.reserve(series.size());
    for (const auto& s : series) ids.push_back(s.station_id);

    panels.reserve(t.window_count);
    for (std::size_t w = 0; w < t.window_count; ++w) {
        WindowedPanel panel;
        panel.window_start = t.first_window + static_cast<Timestamp>(w) * window_length;
        panel.window_length = window_length;
        panel.sample_interval = t.interval;
        panel.station_ids = ids;
        panel.columns.resize(series.size());
        // First grid slot inside the window; the grid phase is shared.
        const Timestamp first_slot = panel.window_start + floor_mod(t.phase - panel.window_start, t.interval);
        for (std::size_t c = 0; c < series.size(); ++c) {
            auto& col = panel.columns[c];
            col.assign(slots, std::nullopt);
            const auto& s = series[c];
            for (std::size_t j = 0; j < slots; ++j) {
                const Timestamp ts = first_slot + static_cast<Timestamp>(j) * t.interval;
                const std::int64_t idx = (ts - s.start) / t.interval;
                if (ts >= s.start && idx < static_cast<std::int64_t>(s.values.size())) {
                    col[j] = s.values[static_cast<std::size_t>(idx)];
                }
            }
        }
        panels.push_back(std::move(panel));
    }
    return panels;
}

MissingnessReport missing_report(const std::vector<StationSeries>& series,
                                 Duration window_length, Duration align_offset) {
    MissingnessReport report;
    std::size_t total_entries = 0;
    std::size_t total_missing = 0;
    for (const auto& s : series) {
        const std::size_t missing = s.missing_count();
        report.per_station_fraction[s.station_id] =
            s.values.empty() ? 0.0 : static_cast<double>(missing) / static_cast<double>(s.values.size());
        total_entries += s.values.size();
        total_missing += missing;
    }
    report.total_fraction =
        total_entries == 0 ? 0.0 : static_cast<double>(total_missing) / static_cast<double>(total_entries);

    const auto panels = window_panel(series, window_length, align_offset);
    report.per_window_fraction.reserve(panels.size());
    for (const auto& panel : panels) {
        std::size_t entries = 0;
        std::size_t missing = 0;
        for (const auto& col : panel.columns) {
            entries += col.size();
            for (const auto& v : col) missing += v.has_value() ? 0 : 1;
        }
        report.per_window_fraction.push_back(
            entries == 0 ? 0.0 : static_cast<double>(missing) / static_cast<double>(entries));
    }
    return report;
}

}  // namespace windnet
