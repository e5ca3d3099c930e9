#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "windnet/time.hpp"

namespace windnet {

/// One station's regularly sampled wind-speed record. Entry i sits at
/// start + i * sample_interval; std::nullopt marks a missing observation.
struct StationSeries {
    std::string station_id;
    Duration sample_interval = 0;
    Timestamp start = 0;
    std::vector<std::optional<double>> values;

    /// One past the last sample slot.
    Timestamp end() const {
        return start + sample_interval * static_cast<Timestamp>(values.size());
    }

    std::size_t missing_count() const {
        std::size_t n = 0;
        for (const auto& v : values) n += v.has_value() ? 0 : 1;
        return n;
    }
};

/// The cross-station slice of all series for one window. Every column has
/// exactly window_length / sample_interval entries; stations that do not
/// cover the window are padded with missing values.
struct WindowedPanel {
    Timestamp window_start = 0;
    Duration window_length = 0;
    Duration sample_interval = 0;
    std::vector<std::string> station_ids;
    std::vector<std::vector<std::optional<double>>> columns;  // [station][slot]

    std::size_t station_count() const { return station_ids.size(); }
    std::size_t samples_per_window() const {
        return sample_interval > 0
                   ? static_cast<std::size_t>(window_length / sample_interval)
                   : 0;
    }
};

/// Missing-data accounting over a station set and its window tiling.
struct MissingnessReport {
    std::map<std::string, double> per_station_fraction;
    std::vector<double> per_window_fraction;
    double total_fraction = 0.0;
};

}  // namespace windnet
