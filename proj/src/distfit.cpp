#include "windnet/distfit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "windnet/errors.hpp"
#include "windnet/optim.hpp"

namespace windnet {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kGumbelCutoff = 1e-6;  // |ξ| below this uses the ξ→0 limit
constexpr double kMinSpacing = 1e-12;

struct SampleStats {
    double mean = 0.0;
    double variance = 0.0;  // unbiased
    double mean_log = 0.0;
    std::size_t n = 0;
};

SampleStats stats_of(std::span<const double> sample, bool with_log) {
    SampleStats s;
    s.n = sample.size();
    for (double x : sample) s.mean += x;
    s.mean /= static_cast<double>(s.n);
    for (double x : sample) {
        const double d = x - s.mean;
        s.variance += d * d;
        if (with_log) s.mean_log += std::log(x);
    }
    s.variance /= static_cast<double>(s.n > 1 ? s.n - 1 : 1);
    if (with_log) s.mean_log /= static_cast<double>(s.n);
    return s;
}

void require_fittable(std::span<const double> sample, DistributionFamily family) {
    if (sample.size() < 10) {
        throw FitError("sample too small to fit (" + std::to_string(sample.size()) +
                       " < 10 values)");
    }
    const auto [lo, hi] = std::minmax_element(sample.begin(), sample.end());
    if (*lo == *hi) {
        throw FitError("degenerate sample: all values equal " + std::to_string(*lo));
    }
    if (family != DistributionFamily::Gev && *lo <= 0.0) {
        throw FitError(std::string(family_name(family)) +
                       " fit requires strictly positive values, got " + std::to_string(*lo));
    }
}

double mean_log_density(const DistParams& params, std::span<const double> sample) {
    double total = 0.0;
    for (double x : sample) {
        const double ld = log_density(params, x);
        if (!std::isfinite(ld)) return -kInf;
        total += ld;
    }
    return total / static_cast<double>(sample.size());
}

// Probability-weighted-moment start for the GEV (Hosking et al. 1985). The
// classic estimator uses k = -ξ; signs are flipped back at the end.
GevParams gev_pwm_start(std::span<const double> sample) {
    std::vector<double> x(sample.begin(), sample.end());
    std::sort(x.begin(), x.end());
    const auto n = static_cast<double>(x.size());
    double b0 = 0.0, b1 = 0.0, b2 = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const auto r = static_cast<double>(i);  // 0-based rank
        b0 += x[i];
        b1 += x[i] * r / (n - 1.0);
        b2 += x[i] * r * (r - 1.0) / ((n - 1.0) * (n - 2.0));
    }
    b0 /= n;
    b1 /= n;
    b2 /= n;

    const double c = (2.0 * b1 - b0) / (3.0 * b2 - b0) - std::log(2.0) / std::log(3.0);
    const double k = 7.8590 * c + 2.9554 * c * c;
    GevParams p;
    if (std::abs(k) < 1e-4) {
        p.scale = (2.0 * b1 - b0) / std::log(2.0);
        p.location = b0 - 0.5772156649015329 * p.scale;
        p.shape = 0.0;
    } else {
        const double g = std::tgamma(1.0 + k);
        p.scale = (2.0 * b1 - b0) * k / (g * (1.0 - std::pow(2.0, -k)));
        p.location = b0 + p.scale * (g - 1.0) / k;
        p.shape = -k;
    }
    if (!(p.scale > 0.0) || !std::isfinite(p.scale) || !std::isfinite(p.location) ||
        !std::isfinite(p.shape)) {
        p.location = b0;
        p.scale = std::sqrt(stats_of(sample, false).variance);
        p.shape = 0.0;
    }
    // Pull the shape toward Gumbel until every point is inside the support.
    for (int tries = 0; tries < 60 && mean_log_density(p, sample) == -kInf; ++tries) {
        p.shape *= 0.5;
        if (std::abs(p.shape) < 1e-8) p.shape = 0.0;
    }
    return p;
}

std::vector<double> natural_params(const DistParams& params) {
    if (const auto* w = std::get_if<WeibullParams>(&params)) return {w->shape, w->scale};
    if (const auto* g = std::get_if<GammaParams>(&params)) return {g->shape, g->rate};
    const auto& e = std::get<GevParams>(params);
    return {e.location, e.scale, e.shape};
}

FitResult maximize(std::span<const double> sample, DistributionFamily family,
                   std::vector<double> start, std::vector<double> step,
                   const std::function<DistParams(std::span<const double>)>& decode) {
    auto objective = [&](std::span<const double> theta) {
        const double mld = mean_log_density(decode(theta), sample);
        return std::isfinite(mld) ? -mld : kInf;
    };
    OptimResult opt = nelder_mead(objective, std::move(start), std::move(step));
    FitResult result;
    result.params = decode(opt.x);
    result.log_likelihood = -opt.value * static_cast<double>(sample.size());
    result.sample_size = sample.size();
    if (!opt.converged) {
        throw ConvergenceError(std::string(family_name(family)) +
                                   " fit did not converge after " +
                                   std::to_string(opt.iterations) + " iterations",
                               natural_params(result.params), result.log_likelihood);
    }
    return result;
}

}  // namespace

std::string_view family_name(DistributionFamily family) {
    switch (family) {
        case DistributionFamily::Weibull: return "weibull";
        case DistributionFamily::Gamma: return "gamma";
        case DistributionFamily::Gev: return "gev";
    }
    return "?";
}

DistributionFamily family_of(const DistParams& params) {
    if (std::holds_alternative<WeibullParams>(params)) return DistributionFamily::Weibull;
    if (std::holds_alternative<GammaParams>(params)) return DistributionFamily::Gamma;
    return DistributionFamily::Gev;
}

double log_density(const DistParams& params, double x) {
    if (const auto* w = std::get_if<WeibullParams>(&params)) {
        if (x < 0.0) return -kInf;
        if (x == 0.0) {
            // Density is k/λ at k=1, 0 above, +inf below; keep it finite.
            return w->shape > 1.0 ? -kInf : (w->shape == 1.0 ? -std::log(w->scale) : kInf);
        }
        const double z = x / w->scale;
        return std::log(w->shape / w->scale) + (w->shape - 1.0) * std::log(z) -
               std::pow(z, w->shape);
    }
    if (const auto* g = std::get_if<GammaParams>(&params)) {
        if (x <= 0.0) return -kInf;
        return g->shape * std::log(g->rate) + (g->shape - 1.0) * std::log(x) - g->rate * x -
               std::lgamma(g->shape);
    }
    const auto& e = std::get<GevParams>(params);
    const double z = (x - e.location) / e.scale;
    if (std::abs(e.shape) < kGumbelCutoff) {
        return -std::log(e.scale) - z - std::exp(-z);
    }
    const double t = 1.0 + e.shape * z;
    if (t <= 0.0) return -kInf;
    return -std::log(e.scale) - (1.0 / e.shape + 1.0) * std::log(t) -
           std::pow(t, -1.0 / e.shape);
}

double quantile(const DistParams& params, double u) {
    if (!(u > 0.0 && u < 1.0)) {
        throw ParamError("quantile requires u in (0, 1)");
    }
    if (const auto* w = std::get_if<WeibullParams>(&params)) {
        return w->scale * std::pow(-std::log1p(-u), 1.0 / w->shape);
    }
    if (std::holds_alternative<GammaParams>(params)) {
        throw ParamError("gamma quantile has no closed form; use sample_distribution");
    }
    const auto& e = std::get<GevParams>(params);
    const double ln = -std::log(u);
    if (std::abs(e.shape) < kGumbelCutoff) {
        return e.location - e.scale * std::log(ln);
    }
    return e.location + e.scale * (std::pow(ln, -e.shape) - 1.0) / e.shape;
}

double cdf(const DistParams& params, double x) {
    if (const auto* w = std::get_if<WeibullParams>(&params)) {
        return x <= 0.0 ? 0.0 : 1.0 - std::exp(-std::pow(x / w->scale, w->shape));
    }
    if (std::holds_alternative<GammaParams>(params)) {
        throw ParamError("gamma cdf not provided; not needed by the pipeline");
    }
    const auto& e = std::get<GevParams>(params);
    const double z = (x - e.location) / e.scale;
    if (std::abs(e.shape) < kGumbelCutoff) {
        return std::exp(-std::exp(-z));
    }
    const double t = 1.0 + e.shape * z;
    if (t <= 0.0) return e.shape > 0.0 ? 0.0 : 1.0;
    return std::exp(-std::pow(t, -1.0 / e.shape));
}

FitResult fit(std::span<const double> sample, DistributionFamily family) {
    require_fittable(sample, family);

    switch (family) {
        case DistributionFamily::Weibull: {
            // Moment start via the coefficient of variation (Justus).
            const SampleStats s = stats_of(sample, false);
            const double cv = std::sqrt(s.variance) / s.mean;
            const double k0 = std::clamp(std::pow(cv, -1.086), 0.05, 50.0);
            const double lambda0 = s.mean / std::tgamma(1.0 + 1.0 / k0);
            return maximize(sample, family, {std::log(k0), std::log(lambda0)}, {0.2, 0.2},
                            [](std::span<const double> th) -> DistParams {
                                return WeibullParams{std::exp(th[0]), std::exp(th[1])};
                            });
        }
        case DistributionFamily::Gamma: {
            const SampleStats s = stats_of(sample, false);
            const double alpha0 = std::clamp(s.mean * s.mean / s.variance, 1e-3, 1e6);
            const double beta0 = s.mean / s.variance;
            return maximize(sample, family, {std::log(alpha0), std::log(beta0)}, {0.2, 0.2},
                            [](std::span<const double> th) -> DistParams {
                                return GammaParams{std::exp(th[0]), std::exp(th[1])};
                            });
        }
        case DistributionFamily::Gev: {
            const GevParams p0 = gev_pwm_start(sample);
            return maximize(sample, family, {p0.location, std::log(p0.scale), p0.shape},
                            {0.1 * p0.scale + 1e-3, 0.1, 0.05},
                            [](std::span<const double> th) -> DistParams {
                                return GevParams{th[0], std::exp(th[1]), th[2]};
                            });
        }
    }
    throw ParamError("unknown distribution family");
}

std::size_t default_vasicek_window(std::size_t n) {
    auto m = static_cast<std::size_t>(std::floor(std::sqrt(static_cast<double>(n))));
    if (m < 1) m = 1;
    if (2 * m >= n && n >= 3) m = (n - 1) / 2;
    return m;
}

double vasicek_entropy(std::span<const double> sample, std::size_t m) {
    const std::size_t n = sample.size();
    if (m < 1 || 2 * m >= n) {
        throw ParamError("vasicek window m = " + std::to_string(m) +
                         " must satisfy 1 <= m < n/2 (n = " + std::to_string(n) + ")");
    }
    std::vector<double> x(sample.begin(), sample.end());
    std::sort(x.begin(), x.end());
    const double scale = static_cast<double>(n) / (2.0 * static_cast<double>(m));
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t hi = std::min(i + m, n - 1);
        const std::size_t lo = i >= m ? i - m : 0;
        const double spacing = std::max(x[hi] - x[lo], kMinSpacing);
        total += std::log(scale * spacing);
    }
    return total / static_cast<double>(n);
}

KldScore kld(std::span<const double> sample, const FitResult& fitted, std::size_t m) {
    const double entropy = vasicek_entropy(sample, m);
    double cross = 0.0;
    for (double x : sample) {
        const double ld = log_density(fitted.params, x);
        if (!std::isfinite(ld)) {
            throw SupportError("sample value " + std::to_string(x) +
                               " lies outside the support of the fitted " +
                               std::string(family_name(fitted.family())) + " density");
        }
        cross += ld;
    }
    cross /= static_cast<double>(sample.size());
    return {fitted.family(), -entropy - cross};
}

double kld_gamma_eq8(std::span<const double> sample, const GammaParams& params, std::size_t m) {
    // Rescale to rate 1, then apply the closed form for Gamma(α, 1).
    std::vector<double> y(sample.size());
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = params.rate * sample[i];
    double mean = 0.0, mean_log = 0.0;
    for (double v : y) {
        mean += v;
        mean_log += std::log(v);
    }
    mean /= static_cast<double>(y.size());
    mean_log /= static_cast<double>(y.size());
    const double entropy = vasicek_entropy(y, m);
    return std::lgamma(params.shape) + mean - (params.shape - 1.0) * mean_log - entropy;
}

std::vector<KldScore> rank_families(std::span<const double> sample, std::size_t m,
                                    std::vector<std::string>* failures) {
    static constexpr DistributionFamily kOrder[] = {
        DistributionFamily::Weibull, DistributionFamily::Gamma, DistributionFamily::Gev};
    std::vector<KldScore> scores;
    for (DistributionFamily family : kOrder) {
        try {
            const FitResult fitted = fit(sample, family);
            scores.push_back(kld(sample, fitted, m));
        } catch (const Error& e) {
            if (failures != nullptr) {
                failures->push_back(std::string(family_name(family)) + ": " + e.what());
            }
        }
    }
    // Ascending divergence; stable sort keeps Weibull < Gamma < GEV on ties.
    std::stable_sort(scores.begin(), scores.end(),
                     [](const KldScore& a, const KldScore& b) { return a.divergence < b.divergence; });
    return scores;
}

}  // namespace windnet
