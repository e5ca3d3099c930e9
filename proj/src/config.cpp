#include "windnet/config.hpp"

#include <charconv>
#include <fstream>

#include "windnet/errors.hpp"

namespace windnet {

namespace {

std::string trim(const std::string& value) {
    const auto first = value.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = value.find_last_not_of(" \t\r");
    return value.substr(first, last - first + 1);
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc() || ptr != value.data() + value.size()) {
        throw ConfigError("key '" + key + "': bad integer '" + value + "'");
    }
    return v;
}

}  // namespace

std::map<std::string, std::string> parse_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot read config file " + path.string());
    }
    std::map<std::string, std::string> entries;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string text = trim(line);
        if (text.empty()) continue;
        const auto eq = text.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config line " + std::to_string(line_no) +
                              ": expected 'key = value', got '" + text + "'");
        }
        const std::string key = trim(text.substr(0, eq));
        const std::string value = trim(text.substr(eq + 1));
        if (key.empty()) {
            throw ConfigError("config line " + std::to_string(line_no) + ": empty key");
        }
        entries[key] = value;
    }
    return entries;
}

void apply_config_entries(const std::map<std::string, std::string>& entries,
                          PipelineConfig& config) {
    for (const auto& [key, value] : entries) {
        try {
            if (key == "input") {
                config.input = value;
            } else if (key == "station_meta") {
                config.station_meta = value;
            } else if (key == "out") {
                config.out = value;
            } else if (key == "interval") {
                config.interval = parse_duration(value);
            } else if (key == "window") {
                config.window = parse_duration(value);
            } else if (key == "utc_offset") {
                config.utc_offset = value == "0" ? 0 : parse_duration(value);
            } else if (key == "rules") {
                config.rules = ThresholdRule::parse_list(value);
            } else if (key == "min_overlap") {
                config.min_overlap = static_cast<std::size_t>(parse_u64(key, value));
            } else if (key == "vasicek_m") {
                config.vasicek_m = static_cast<std::size_t>(parse_u64(key, value));
            } else if (key == "lag_max") {
                config.lag_max = static_cast<std::size_t>(parse_u64(key, value));
            } else if (key == "corr_method") {
                config.corr_method = parse_corr_method(value);
            } else if (key == "seed") {
                config.seed = parse_u64(key, value);
            } else if (key == "missing") {
                config.missing = value;
            } else if (key == "graph_window") {
                config.graph_window = value;
            } else if (key == "threads") {
                config.threads = static_cast<std::size_t>(parse_u64(key, value));
            } else {
                throw ConfigError("unknown config key '" + key + "'");
            }
        } catch (const ConfigError&) {
            throw;
        } catch (const Error& e) {
            throw ConfigError("key '" + key + "': " + e.what());
        }
    }
}

void validate_config(const PipelineConfig& config) {
    if (config.input.empty()) {
        throw ConfigError("no input CSV given (key 'input' or flag --input)");
    }
    if (!std::filesystem::exists(config.input)) {
        throw IoError("input path does not exist: " + config.input);
    }
    if (!config.station_meta.empty() && !std::filesystem::exists(config.station_meta)) {
        throw IoError("station metadata path does not exist: " + config.station_meta);
    }
    if (config.interval <= 0 || config.window <= 0) {
        throw ConfigError("interval and window must be positive");
    }
    if (config.rules.empty()) {
        throw ConfigError("at least one threshold rule is required");
    }
    if (config.min_overlap < 3) {
        throw ConfigError("min_overlap must be >= 3");
    }
    if (!config.graph_window.empty()) {
        parse_iso8601(config.graph_window);  // throws ParseError when malformed
    }
}

}  // namespace windnet
