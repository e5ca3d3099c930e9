#include "windnet/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "windnet/errors.hpp"
#include "windnet/sampling.hpp"

namespace windnet {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> grid_frequencies(std::size_t n) {
    const std::size_t bins = (n - 1) / 2 + 1;  // l = 0..floor((N-1)/2)
    std::vector<double> freq(bins);
    for (std::size_t l = 0; l < bins; ++l) {
        freq[l] = 2.0 * kPi * static_cast<double>(l) / static_cast<double>(n);
    }
    return freq;
}

std::vector<double> remove_mean(std::span<const double> y) {
    double mean = 0.0;
    for (double v : y) mean += v;
    mean /= static_cast<double>(y.size());
    std::vector<double> out(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) out[i] = y[i] - mean;
    return out;
}

/// Evaluates c_0 + 2 Σ_{k=1..K} c_k cos(ωk) with the stable trig recurrence
/// (α = 2 sin²(ω/2), β = sin ω keep significance at small ω).
double cosine_sum(std::span<const double> coeffs, double omega) {
    const double alpha = 2.0 * std::pow(std::sin(0.5 * omega), 2);
    const double beta = std::sin(omega);
    double c = 1.0, s = 0.0;  // cos(0k), sin(0k)
    double total = coeffs[0];
    for (std::size_t k = 1; k < coeffs.size(); ++k) {
        const double cn = c - (alpha * c + beta * s);
        const double sn = s - (alpha * s - beta * c);
        c = cn;
        s = sn;
        total += 2.0 * coeffs[k] * c;
    }
    return total;
}

}  // namespace

std::string_view estimator_name(Estimator e) {
    switch (e) {
        case Estimator::Classical: return "classical";
        case Estimator::Correlogram: return "correlogram";
        case Estimator::Robust: return "robust";
    }
    return "?";
}

std::string_view corr_method_name(CorrMethod m) {
    return m == CorrMethod::Pearson ? "pearson" : "spearman";
}

CorrMethod parse_corr_method(std::string_view text) {
    if (text == "pearson") return CorrMethod::Pearson;
    if (text == "spearman") return CorrMethod::SpearmanRank;
    throw ParseError("bad correlation method '" + std::string(text) +
                     "'; expected pearson or spearman");
}

double Periodogram::period_seconds(std::size_t bin) const {
    if (bin == 0) return std::numeric_limits<double>::infinity();
    return static_cast<double>(series_length) * sample_interval_s / static_cast<double>(bin);
}

std::vector<double> synth_cosine(const SignalModel& model, std::uint64_t seed) {
    if (model.n == 0) throw ParamError("signal model length must be positive");
    if (!(model.omega > 0.0 && model.omega < kPi)) {
        throw ParamError("signal frequency must lie in (0, pi)");
    }
    if (model.beta < 0.0 || model.sigma < 0.0) {
        throw ParamError("signal amplitude and noise level must be nonnegative");
    }
    if (!(model.phi > -kPi && model.phi <= kPi)) {
        throw ParamError("signal phase must lie in (-pi, pi]");
    }
    Rng rng(seed);
    std::vector<double> y(model.n);
    for (std::size_t i = 0; i < model.n; ++i) {
        y[i] = model.beta * std::cos(model.omega * static_cast<double>(i) + model.phi);
        if (model.sigma > 0.0) y[i] += model.sigma * rng.normal();
    }
    return y;
}

Periodogram classical_periodogram(std::span<const double> y, double sample_interval_s) {
    const std::size_t n = y.size();
    if (n < 4) throw SizeError("periodogram needs N >= 4, got " + std::to_string(n));
    const std::vector<double> centered = remove_mean(y);

    Periodogram p;
    p.estimator = Estimator::Classical;
    p.series_length = n;
    p.sample_interval_s = sample_interval_s;
    p.frequencies = grid_frequencies(n);
    p.powers.resize(p.frequencies.size());
    for (std::size_t l = 0; l < p.frequencies.size(); ++l) {
        const double omega = p.frequencies[l];
        const double alpha = 2.0 * std::pow(std::sin(0.5 * omega), 2);
        const double beta = std::sin(omega);
        double c = 1.0, s = 0.0;
        double re = 0.0, im = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            re += centered[k] * c;
            im += centered[k] * s;
            const double cn = c - (alpha * c + beta * s);
            const double sn = s - (alpha * s - beta * c);
            c = cn;
            s = sn;
        }
        p.powers[l] = (re * re + im * im) / static_cast<double>(n);
    }
    return p;
}

double autocorr_biased(std::span<const double> y, std::size_t lag) {
    const std::size_t n = y.size();
    if (lag >= n) {
        throw LagError("autocorrelation lag " + std::to_string(lag) + " out of range for N = " +
                       std::to_string(n));
    }
    double total = 0.0;
    for (std::size_t k = 0; k + lag < n; ++k) total += y[k] * y[k + lag];
    return total / static_cast<double>(n);
}

Periodogram correlogram_spectrum(std::span<const double> y, double sample_interval_s) {
    const std::size_t n = y.size();
    if (n < 4) throw SizeError("correlogram needs N >= 4, got " + std::to_string(n));
    const std::vector<double> centered = remove_mean(y);

    std::vector<double> acf(n);
    for (std::size_t m = 0; m < n; ++m) acf[m] = autocorr_biased(centered, m);

    Periodogram p;
    p.estimator = Estimator::Correlogram;
    p.series_length = n;
    p.sample_interval_s = sample_interval_s;
    p.frequencies = grid_frequencies(n);
    p.powers.resize(p.frequencies.size());
    // r(-k) = r(k), so the two-sided sum collapses to a cosine series.
    for (std::size_t l = 0; l < p.frequencies.size(); ++l) {
        p.powers[l] = cosine_sum(acf, p.frequencies[l]);
    }
    return p;
}

std::vector<double> midranks(std::span<const double> values) {
    const std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<double> ranks(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
        const double rank = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
        i = j + 1;
    }
    return ranks;
}

namespace {

double plain_pearson(std::span<const double> a, std::span<const double> b) {
    const std::size_t n = a.size();
    double ma = 0.0, mb = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        ma += a[i];
        mb += b[i];
    }
    ma /= static_cast<double>(n);
    mb /= static_cast<double>(n);
    double saa = 0.0, sbb = 0.0, sab = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double da = a[i] - ma;
        const double db = b[i] - mb;
        saa += da * da;
        sbb += db * db;
        sab += da * db;
    }
    if (saa <= 0.0 || sbb <= 0.0) {
        throw ZeroVarianceError("constant overlap");
    }
    return std::clamp(sab / std::sqrt(saa * sbb), -1.0, 1.0);
}

}  // namespace

double robust_correlation(std::span<const double> y, std::size_t lag, CorrMethod method) {
    const std::size_t n = y.size();
    if (lag + 3 > n) {
        throw LagError("lag " + std::to_string(lag) + " leaves an overlap below 3 points (N = " +
                       std::to_string(n) + ")");
    }
    const std::span<const double> a = y.subspan(0, n - lag);
    const std::span<const double> b = y.subspan(lag, n - lag);
    if (lag == 0) {
        double lo = y[0], hi = y[0];
        for (double v : y) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        if (lo == hi) throw ZeroVarianceError("constant series at lag 0");
        return 1.0;
    }
    if (method == CorrMethod::Pearson) {
        return plain_pearson(a, b);
    }
    const std::vector<double> ra = midranks(a);
    const std::vector<double> rb = midranks(b);
    return plain_pearson(ra, rb);
}

std::size_t default_max_lag(std::size_t n) {
    if (n < 6) throw SizeError("robust periodogram needs N >= 6, got " + std::to_string(n));
    return std::clamp<std::size_t>(n / 3, 3, n - 3);
}

Periodogram robust_periodogram(std::span<const double> y, std::size_t max_lag, CorrMethod method,
                               double sample_interval_s,
                               std::vector<std::size_t>* degenerate_lags) {
    const std::size_t n = y.size();
    if (max_lag < 3 || max_lag + 3 > n) {
        throw ParamError("maximum lag " + std::to_string(max_lag) +
                         " outside the valid range [3, N-3] for N = " + std::to_string(n));
    }
    const std::vector<double> centered = remove_mean(y);

    std::vector<double> lag_corr(max_lag + 1, 0.0);
    for (std::size_t k = 0; k <= max_lag; ++k) {
        try {
            lag_corr[k] = robust_correlation(centered, k, method);
        } catch (const ZeroVarianceError&) {
            if (degenerate_lags != nullptr) degenerate_lags->push_back(k);
        }
    }

    Periodogram p;
    p.estimator = Estimator::Robust;
    p.max_lag = max_lag;
    p.method = method;
    p.series_length = n;
    p.sample_interval_s = sample_interval_s;
    p.frequencies = grid_frequencies(n);
    p.powers.resize(p.frequencies.size());
    // 2 Re(Σ_{k=0..L} ρ(k) e^{iωk}) - ρ(0) = ρ(0) + 2 Σ_{k=1..L} ρ(k) cos(ωk).
    for (std::size_t l = 0; l < p.frequencies.size(); ++l) {
        p.powers[l] = cosine_sum(lag_corr, p.frequencies[l]);
    }
    return p;
}

PeakReport peak_period(const Periodogram& p,
                       std::optional<std::pair<double, double>> period_band_s) {
    if (p.size() < 2) {
        throw SizeError("periodogram has no nonzero-frequency bin");
    }
    PeakReport report;
    report.band_s = period_band_s;
    bool found = false;
    for (std::size_t l = 1; l < p.size(); ++l) {
        if (period_band_s.has_value()) {
            const double period = p.period_seconds(l);
            if (period < period_band_s->first || period > period_band_s->second) continue;
        }
        if (!found || p.powers[l] > report.power) {
            found = true;
            report.bin = l;
            report.frequency = p.frequencies[l];
            report.period_s = p.period_seconds(l);
            report.power = p.powers[l];
        }
    }
    if (!found) {
        throw BandError("no spectrum bin falls inside the requested period band");
    }
    return report;
}

std::vector<double> interpolate_missing(std::span<const std::optional<double>> values,
                                        std::size_t max_run) {
    std::vector<double> out(values.size());
    std::size_t i = 0;
    while (i < values.size()) {
        if (values[i].has_value()) {
            out[i] = *values[i];
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < values.size() && !values[j].has_value()) ++j;
        const std::size_t run = j - i;
        if (run > max_run) {
            throw GapError("missing run of " + std::to_string(run) +
                           " windows exceeds the interpolation limit of " +
                           std::to_string(max_run));
        }
        const bool has_left = i > 0;
        const bool has_right = j < values.size();
        if (!has_left && !has_right) {
            throw GapError("series is entirely missing");
        }
        for (std::size_t k = i; k < j; ++k) {
            if (has_left && has_right) {
                const double left = out[i - 1];
                const double right = *values[j];
                const double t = static_cast<double>(k - i + 1) / static_cast<double>(run + 1);
                out[k] = left + t * (right - left);
            } else if (has_right) {
                out[k] = *values[j];
            } else {
                out[k] = out[i - 1];
            }
        }
        i = j;
    }
    return out;
}

}  // namespace windnet
