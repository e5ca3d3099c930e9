#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "windnet/config.hpp"
#include "windnet/series.hpp"

namespace windnet {

/// Synthetic multi-station corpus with a seasonally modulated shared signal:
/// station i at sample t is g_i A(d) s_t + ε_it with A(d) chosen so that the
/// within-day correlation between in-phase stations sweeps
/// base_corr ± corr_swing over one year. anti_fraction of the stations carry
/// g = -1 and correlate negatively with the rest.
struct SynthOptions {
    std::size_t stations = 10;
    std::size_t days = 730;
    Duration sample_interval = 3600;
    Timestamp start = 1325376000;  // 2012-01-01T00:00:00Z
    std::uint64_t seed = 1;
    double base_corr = 0.25;
    double corr_swing = 0.35;
    double anti_fraction = 0.5;
    /// Map values through max(0, offset + scale * x) so they are valid wind
    /// speeds; leave false for raw Gaussian panels.
    bool nonneg = false;
    double nonneg_offset = 5.0;
    double nonneg_scale = 2.0;
};

std::vector<StationSeries> make_synthetic_corpus(const SynthOptions& options);

/// Pipeline commands. Each writes its CSV/SVG artifacts under config.out and
/// returns 0; failures surface as exceptions for the CLI to map onto exit
/// codes and stderr diagnostics.
int cmd_fit(const PipelineConfig& config);
int cmd_density(const PipelineConfig& config);
int cmd_periodogram(const PipelineConfig& config);
int cmd_surrogate(const PipelineConfig& config);
int cmd_report(const PipelineConfig& config);

/// `synth` subcommand body: writes a corpus CSV.
int cmd_synth(const std::filesystem::path& out_csv, const SynthOptions& options);

}  // namespace windnet
