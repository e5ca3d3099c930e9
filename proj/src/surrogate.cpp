#include "windnet/surrogate.hpp"

#include <algorithm>
#include <cmath>

#include "windnet/errors.hpp"
#include "windnet/ingest.hpp"
#include "windnet/parallel.hpp"
#include "windnet/sampling.hpp"

namespace windnet {

double annual_peak_ratio(const Periodogram& p) {
    std::vector<double> magnitudes;
    magnitudes.reserve(p.size());
    for (std::size_t l = 1; l < p.size(); ++l) {
        magnitudes.push_back(std::abs(p.powers[l]));
    }
    if (magnitudes.empty()) return 0.0;
    std::nth_element(magnitudes.begin(), magnitudes.begin() + magnitudes.size() / 2,
                     magnitudes.end());
    const double median = magnitudes[magnitudes.size() / 2];
    if (median <= 0.0) return 0.0;
    PeakReport peak;
    try {
        peak = peak_period(p, std::make_pair(kAnnualBandLoDays * kSecondsPerDay,
                                             kAnnualBandHiDays * kSecondsPerDay));
    } catch (const BandError&) {
        return 0.0;
    }
    return std::max(peak.power, 0.0) / median;
}

std::vector<StationSeries> simulate_gev_panel(const SurrogateSpec& spec) {
    if (spec.fits.empty() || spec.n_samples == 0) {
        throw ParamError("surrogate spec needs stations and a positive sample count");
    }
    if (spec.sample_interval <= 0) {
        throw ParamError("surrogate sample interval must be positive");
    }
    for (const auto& [station, params] : spec.fits) {
        if (!(params.scale > 0.0)) {
            throw ParamError("station " + station + ": GEV scale must be positive");
        }
    }
    std::vector<StationSeries> out(spec.fits.size());
    parallel_for(spec.fits.size(), effective_threads(), [&](std::size_t i) {
        const auto& [station, params] = spec.fits[i];
        Rng rng(derive_seed(spec.seed, i));
        StationSeries s;
        s.station_id = station;
        s.sample_interval = spec.sample_interval;
        s.start = spec.start;
        s.values.resize(spec.n_samples);
        const DistParams dist = params;
        for (auto& v : s.values) v = quantile(dist, rng.unit_open());
        out[i] = std::move(s);
    });
    return out;
}

namespace {

/// Threshold ladder used to report the connected range: negative rules at
/// -0.9..-0.1 and positive rules at 0.1..0.9 in 0.1 steps.
std::vector<std::pair<double, ThresholdRule>> connectivity_ladder() {
    std::vector<std::pair<double, ThresholdRule>> ladder;
    for (int k = -9; k <= 9; ++k) {
        if (k == 0) continue;
        const double tau = static_cast<double>(k) / 10.0;
        ladder.emplace_back(tau, k < 0 ? ThresholdRule::negative_at_most(tau)
                                       : ThresholdRule::positive_at_least(tau));
    }
    return ladder;
}

double mean_density(const DensitySeries& d) {
    double total = 0.0;
    std::size_t n = 0;
    for (const auto& v : d.densities) {
        if (v.has_value()) {
            total += *v;
            ++n;
        }
    }
    return n == 0 ? 0.0 : total / static_cast<double>(n);
}

}  // namespace

SurrogateOutcome surrogate_experiment(const SurrogateSpec& spec, Duration window_length,
                                      std::size_t min_overlap, std::size_t max_lag,
                                      CorrMethod method, std::size_t threads) {
    const std::vector<StationSeries> series = simulate_gev_panel(spec);
    const std::vector<WindowedPanel> panels = window_panel(series, window_length);
    if (panels.empty()) {
        throw ParamError("surrogate span too short for a single window");
    }

    const auto ladder = connectivity_ladder();
    std::vector<ThresholdRule> all_rules = spec.rules;
    for (const auto& [tau, rule] : ladder) all_rules.push_back(rule);

    std::vector<DensitySeries> all =
        density_series_multi(panels, all_rules, min_overlap, threads);

    SurrogateOutcome outcome;
    outcome.rules = spec.rules;
    outcome.densities.assign(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(spec.rules.size()));

    double lo = 0.0, hi = 0.0;
    bool any = false;
    for (std::size_t i = 0; i < ladder.size(); ++i) {
        if (mean_density(all[spec.rules.size() + i]) > 0.0) {
            const double tau = ladder[i].first;
            if (!any) {
                lo = hi = tau;
                any = true;
            } else {
                lo = std::min(lo, tau);
                hi = std::max(hi, tau);
            }
        }
    }
    if (any) outcome.connected_range = std::make_pair(lo, hi);

    outcome.annual_peak_ratio.resize(spec.rules.size());
    const std::size_t n_windows = panels.size();
    const std::size_t lag = max_lag == 0 ? default_max_lag(n_windows) : max_lag;
    for (std::size_t r = 0; r < spec.rules.size(); ++r) {
        const std::vector<double> filled = interpolate_missing(outcome.densities[r].densities, 7);
        const Periodogram p = robust_periodogram(filled, lag, method,
                                                 static_cast<double>(window_length));
        outcome.annual_peak_ratio[r] = annual_peak_ratio(p);
    }
    return outcome;
}

}  // namespace windnet
