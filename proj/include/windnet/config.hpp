#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "windnet/corrnet.hpp"
#include "windnet/spectral.hpp"
#include "windnet/time.hpp"

namespace windnet {

/// Everything the pipeline commands need. Defaults follow the analysis as
/// published: 10-minute sampling, 1-day windows, half-a-day minimum overlap,
/// Spearman lag correlations with L = N/3.
struct PipelineConfig {
    std::string input;
    std::string station_meta;
    std::string out = "out";
    Duration interval = 600;
    Duration window = kSecondsPerDay;
    Duration utc_offset = 0;
    std::vector<ThresholdRule> rules = ThresholdRule::parse_list(
        "pos:0.2,pos:0.5,pos:0.8,neg:-0.2,neg:-0.5,neg:-0.8");
    std::size_t min_overlap = 72;
    std::size_t vasicek_m = 0;  // 0 = floor(sqrt(n))
    std::size_t lag_max = 0;    // 0 = floor(N/3)
    CorrMethod corr_method = CorrMethod::SpearmanRank;
    std::uint64_t seed = 1;
    std::string missing;        // extra missing-value sentinel
    std::string graph_window;   // ISO timestamp of a window to export as edges
    std::size_t threads = 0;    // 0 = auto
};

/// Reads a flat `key = value` file; '#' starts a comment, blank lines are
/// skipped. Throws ConfigError (with line number) on anything else.
std::map<std::string, std::string> parse_config_file(const std::filesystem::path& path);

/// Applies entries onto a config; unknown keys or unparsable values throw
/// ConfigError naming the key.
void apply_config_entries(const std::map<std::string, std::string>& entries,
                          PipelineConfig& config);

/// Checks that referenced paths exist and values are coherent; throws
/// ConfigError / IoError.
void validate_config(const PipelineConfig& config);

}  // namespace windnet
