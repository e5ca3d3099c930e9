#include "windnet/corrnet.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>

#include "windnet/errors.hpp"
#include "windnet/parallel.hpp"

namespace windnet {

namespace {

double parse_number(std::string_view text) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw ParseError("bad threshold value '" + std::string(text) + "'");
    }
    return v;
}

std::string short_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

}  // namespace

ThresholdRule ThresholdRule::positive_at_least(double tau) {
    if (!(tau > 0.0 && tau <= 1.0)) {
        throw ParamError("positive threshold must lie in (0, 1], got " + short_number(tau));
    }
    return {RuleKind::PositiveAtLeast, tau, 0.0};
}

ThresholdRule ThresholdRule::negative_at_most(double tau) {
    if (!(tau >= -1.0 && tau < 0.0)) {
        throw ParamError("negative threshold must lie in [-1, 0), got " + short_number(tau));
    }
    return {RuleKind::NegativeAtMost, tau, 0.0};
}

ThresholdRule ThresholdRule::absolute_at_least(double tau) {
    if (!(tau > 0.0 && tau <= 1.0)) {
        throw ParamError("absolute threshold must lie in (0, 1], got " + short_number(tau));
    }
    return {RuleKind::AbsoluteAtLeast, tau, 0.0};
}

ThresholdRule ThresholdRule::band(double lo, double hi) {
    if (!(lo >= -1.0 && lo < hi && hi <= 1.0)) {
        throw ParamError("band must satisfy -1 <= lo < hi <= 1, got [" + short_number(lo) +
                         ", " + short_number(hi) + ")");
    }
    return {RuleKind::Band, lo, hi};
}

ThresholdRule ThresholdRule::parse(std::string_view text) {
    const auto colon = text.find(':');
    if (colon == std::string_view::npos) {
        throw ParseError("bad rule '" + std::string(text) +
                         "': expected pos:T, neg:T, abs:T or band:LO:HI");
    }
    const std::string_view kind = text.substr(0, colon);
    const std::string_view rest = text.substr(colon + 1);
    if (kind == "pos") return positive_at_least(parse_number(rest));
    if (kind == "neg") return negative_at_most(parse_number(rest));
    if (kind == "abs") return absolute_at_least(parse_number(rest));
    if (kind == "band") {
        const auto sep = rest.find(':');
        if (sep == std::string_view::npos) {
            throw ParseError("bad band rule '" + std::string(text) + "': expected band:LO:HI");
        }
        return band(parse_number(rest.substr(0, sep)), parse_number(rest.substr(sep + 1)));
    }
    throw ParseError("unknown rule kind '" + std::string(kind) + "'");
}

std::vector<ThresholdRule> ThresholdRule::parse_list(std::string_view text) {
    std::vector<ThresholdRule> rules;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto comma = text.find(',', pos);
        if (comma == std::string_view::npos) comma = text.size();
        const std::string_view item = text.substr(pos, comma - pos);
        if (!item.empty()) rules.push_back(parse(item));
        pos = comma + 1;
    }
    if (rules.empty()) throw ParseError("empty rule list");
    return rules;
}

std::vector<ThresholdRule> ThresholdRule::band_partition() {
    std::vector<ThresholdRule> bands;
    bands.reserve(20);
    for (int k = 0; k < 20; ++k) {
        // Shared boundary floats so consecutive bands tile exactly.
        bands.push_back(band(static_cast<double>(k - 10) / 10.0,
                             static_cast<double>(k - 9) / 10.0));
    }
    return bands;
}

bool ThresholdRule::admits(double rho) const {
    switch (kind_) {
        case RuleKind::PositiveAtLeast: return rho >= a_;
        case RuleKind::NegativeAtMost: return rho <= a_;
        case RuleKind::AbsoluteAtLeast: return std::abs(rho) >= a_;
        case RuleKind::Band: return rho >= a_ && (rho < b_ || (b_ == 1.0 && rho == 1.0));
    }
    return false;
}

std::string ThresholdRule::label() const {
    switch (kind_) {
        case RuleKind::PositiveAtLeast: return "pos:" + short_number(a_);
        case RuleKind::NegativeAtMost: return "neg:" + short_number(a_);
        case RuleKind::AbsoluteAtLeast: return "abs:" + short_number(a_);
        case RuleKind::Band: return "band:" + short_number(a_) + ":" + short_number(b_);
    }
    return "?";
}

std::string ThresholdRule::name() const {
    switch (kind_) {
        case RuleKind::PositiveAtLeast: return "pos" + short_number(a_);
        case RuleKind::NegativeAtMost: return "neg" + short_number(a_);
        case RuleKind::AbsoluteAtLeast: return "abs" + short_number(a_);
        case RuleKind::Band: return "band" + short_number(a_) + "_" + short_number(b_);
    }
    return "?";
}

std::size_t CorrelationMatrix::valid_pair_count() const {
    std::size_t count = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            count += is_valid(i, j) ? 1 : 0;
        }
    }
    return count;
}

std::optional<double> pearson(std::span<const std::optional<double>> x,
                              std::span<const std::optional<double>> y,
                              std::size_t min_overlap) {
    if (x.size() != y.size()) {
        throw ShapeError("pearson: length mismatch " + std::to_string(x.size()) + " vs " +
                         std::to_string(y.size()));
    }
    if (min_overlap < 3) {
        throw ParamError("pearson: min_overlap must be >= 3");
    }
    std::size_t n = 0;
    double sx = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i].has_value() && y[i].has_value()) {
            ++n;
            sx += *x[i];
            sy += *y[i];
        }
    }
    if (n < min_overlap) return std::nullopt;
    const double mx = sx / static_cast<double>(n);
    const double my = sy / static_cast<double>(n);
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i].has_value() && y[i].has_value()) {
            const double dx = *x[i] - mx;
            const double dy = *y[i] - my;
            sxx += dx * dx;
            syy += dy * dy;
            sxy += dx * dy;
        }
    }
    if (sxx <= 0.0 || syy <= 0.0) return std::nullopt;
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

CorrelationMatrix correlation_matrix(const WindowedPanel& panel, std::size_t min_overlap) {
    const std::size_t n = panel.station_count();
    if (n < 2) {
        throw SizeError("correlation matrix needs >= 2 stations, got " + std::to_string(n));
    }
    CorrelationMatrix m;
    m.station_ids = panel.station_ids;
    m.n = n;
    m.rho.assign(n * n, 0.0);
    m.valid.assign(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        m.rho[i * n + i] = 1.0;
        const auto self = pearson(panel.columns[i], panel.columns[i], min_overlap);
        m.valid[i * n + i] = self.has_value() ? 1 : 0;
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const auto r = pearson(panel.columns[i], panel.columns[j], min_overlap);
            if (r.has_value()) {
                m.rho[i * n + j] = m.rho[j * n + i] = *r;
                m.valid[i * n + j] = m.valid[j * n + i] = 1;
            }
        }
    }
    return m;
}

CorrelationGraph apply_rule(const CorrelationMatrix& matrix, const ThresholdRule& rule) {
    CorrelationGraph g;
    g.node_count = matrix.n;
    for (std::size_t i = 0; i < matrix.n; ++i) {
        for (std::size_t j = i + 1; j < matrix.n; ++j) {
            if (matrix.is_valid(i, j) && rule.admits(matrix.at(i, j))) {
                g.edges.emplace_back(i, j);
            }
        }
    }
    return g;
}

double connectivity_density(const CorrelationGraph& graph) {
    if (graph.node_count < 2) {
        throw SizeError("connectivity density needs >= 2 nodes, got " +
                        std::to_string(graph.node_count));
    }
    const auto n = static_cast<double>(graph.node_count);
    return static_cast<double>(graph.edges.size()) / (n * (n - 1.0) / 2.0);
}

namespace {

/// A station is usable in a window when it correlates with itself, i.e. has
/// enough present samples and nonzero variance.
std::size_t usable_station_count(const CorrelationMatrix& m) {
    std::size_t count = 0;
    for (std::size_t i = 0; i < m.n; ++i) count += m.is_valid(i, i) ? 1 : 0;
    return count;
}

}  // namespace

std::vector<DensitySeries> density_series_multi(std::span<const WindowedPanel> panels,
                                                std::span<const ThresholdRule> rules,
                                                std::size_t min_overlap, std::size_t threads) {
    if (panels.empty()) {
        throw ParamError("density series needs at least one window");
    }
    for (std::size_t w = 1; w < panels.size(); ++w) {
        if (panels[w].window_start <= panels[w - 1].window_start) {
            throw ParamError("windows must be chronologically ordered");
        }
    }
    std::vector<DensitySeries> out;
    out.reserve(rules.size());
    for (const auto& rule : rules) {
        DensitySeries d{{}, {}, {}, rule};
        d.window_starts.resize(panels.size());
        d.densities.resize(panels.size());
        d.valid_pairs.resize(panels.size());
        out.push_back(std::move(d));
    }

    parallel_for(panels.size(), effective_threads(threads), [&](std::size_t w) {
        const CorrelationMatrix matrix = correlation_matrix(panels[w], min_overlap);
        const bool usable = usable_station_count(matrix) >= 2;
        const std::size_t valid_pairs = matrix.valid_pair_count();
        for (std::size_t r = 0; r < rules.size(); ++r) {
            out[r].window_starts[w] = panels[w].window_start;
            out[r].valid_pairs[w] = valid_pairs;
            if (usable) {
                out[r].densities[w] = connectivity_density(apply_rule(matrix, rules[r]));
            }
        }
    });
    return out;
}

DensitySeries density_series(std::span<const WindowedPanel> panels, const ThresholdRule& rule,
                             std::size_t min_overlap, std::size_t threads) {
    return density_series_multi(panels, std::span<const ThresholdRule>(&rule, 1), min_overlap,
                                threads)
        .front();
}

}  // namespace windnet
