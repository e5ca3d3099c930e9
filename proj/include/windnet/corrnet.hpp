#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "windnet/series.hpp"

namespace windnet {

enum class RuleKind { PositiveAtLeast, NegativeAtMost, AbsoluteAtLeast, Band };

/// Edge-admission predicate on a correlation value. PositiveAtLeast keeps
/// ρ >= τ, NegativeAtMost keeps ρ <= τ, AbsoluteAtLeast keeps |ρ| >= τ, and
/// Band keeps lo <= ρ < hi (closed at hi when hi = 1 so the top band is
/// [0.9, 1]).
class ThresholdRule {
public:
    static ThresholdRule positive_at_least(double tau);  // τ in (0, 1]
    static ThresholdRule negative_at_most(double tau);   // τ in [-1, 0)
    static ThresholdRule absolute_at_least(double tau);  // τ in (0, 1]
    static ThresholdRule band(double lo, double hi);     // -1 <= lo < hi <= 1

    /// Parses "pos:0.2", "neg:-0.4", "abs:0.7" or "band:0.3:0.4".
    static ThresholdRule parse(std::string_view text);

    /// Comma-separated list of the above.
    static std::vector<ThresholdRule> parse_list(std::string_view text);

    /// The 20 bands [-1,-0.9), [-0.9,-0.8), ..., [0.9,1] tiling [-1,1].
    static std::vector<ThresholdRule> band_partition();

    bool admits(double rho) const;

    RuleKind kind() const { return kind_; }
    double tau() const { return a_; }
    double lo() const { return a_; }
    double hi() const { return b_; }

    /// Canonical form, e.g. "pos:0.2" or "band:0.3:0.4".
    std::string label() const;
    /// Filesystem-safe form, e.g. "pos0.2" or "band0.3_0.4".
    std::string name() const;

    bool operator==(const ThresholdRule& other) const = default;

private:
    ThresholdRule(RuleKind kind, double a, double b) : kind_(kind), a_(a), b_(b) {}

    RuleKind kind_;
    double a_;
    double b_;
};

/// Symmetric station-by-station Pearson matrix with unit diagonal. valid is
/// false where the pair lacked overlap or variance; such pairs never yield
/// edges.
struct CorrelationMatrix {
    std::vector<std::string> station_ids;
    std::size_t n = 0;
    std::vector<double> rho;          // n*n row-major
    std::vector<std::uint8_t> valid;  // n*n

    double at(std::size_t i, std::size_t j) const { return rho[i * n + j]; }
    bool is_valid(std::size_t i, std::size_t j) const { return valid[i * n + j] != 0; }
    std::size_t valid_pair_count() const;
};

/// Undirected graph over the matrix's stations; edges store (i, j), i < j.
struct CorrelationGraph {
    std::size_t node_count = 0;
    std::vector<std::pair<std::size_t, std::size_t>> edges;
};

/// Connectivity densities, one per window; std::nullopt flags windows where
/// fewer than two stations had usable data.
struct DensitySeries {
    std::vector<Timestamp> window_starts;
    std::vector<std::optional<double>> densities;
    std::vector<std::size_t> valid_pairs;
    ThresholdRule rule;
};

/// Pairwise-complete Pearson correlation, clamped to [-1, 1]. Returns
/// nullopt when the overlap is shorter than min_overlap or either side has
/// zero variance on the overlap. min_overlap must be >= 3.
std::optional<double> pearson(std::span<const std::optional<double>> x,
                              std::span<const std::optional<double>> y,
                              std::size_t min_overlap);

/// All-pairs correlation of one window's columns.
CorrelationMatrix correlation_matrix(const WindowedPanel& panel, std::size_t min_overlap);

/// Keeps exactly the valid pairs whose correlation satisfies the rule.
CorrelationGraph apply_rule(const CorrelationMatrix& matrix, const ThresholdRule& rule);

/// Δ = E / (N(N-1)/2). The denominator always counts every station so the
/// value stays comparable across windows.
double connectivity_density(const CorrelationGraph& graph);

/// correlation_matrix -> apply_rule -> connectivity_density per window.
DensitySeries density_series(std::span<const WindowedPanel> panels,
                             const ThresholdRule& rule, std::size_t min_overlap,
                             std::size_t threads = 0);

/// Same, sharing one correlation matrix per window across all rules.
std::vector<DensitySeries> density_series_multi(std::span<const WindowedPanel> panels,
                                                std::span<const ThresholdRule> rules,
                                                std::size_t min_overlap,
                                                std::size_t threads = 0);

}  // namespace windnet
