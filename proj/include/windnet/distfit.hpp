#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace windnet {

enum class DistributionFamily { Weibull, Gamma, Gev };

std::string_view family_name(DistributionFamily family);

/// Two-parameter Weibull: f(x) = (k/λ)(x/λ)^(k-1) exp(-(x/λ)^k), x >= 0.
struct WeibullParams {
    double shape = 1.0;  // k
    double scale = 1.0;  // λ
};

/// Gamma with shape α and rate β: f(x) = β^α x^(α-1) e^(-βx) / Γ(α).
struct GammaParams {
    double shape = 1.0;  // α
    double rate = 1.0;   // β
};

/// Generalized extreme value: F(x) = exp(-[1 + ξ(x-μ)/σ]^(-1/ξ)) on
/// 1 + ξ(x-μ)/σ > 0, with the Gumbel limit at ξ = 0.
struct GevParams {
    double location = 0.0;  // μ
    double scale = 1.0;     // σ
    double shape = 0.0;     // ξ
};

using DistParams = std::variant<WeibullParams, GammaParams, GevParams>;

DistributionFamily family_of(const DistParams& params);

/// Natural log of the density; -infinity outside the support.
double log_density(const DistParams& params, double x);

/// Inverse CDF for u in (0, 1).
double quantile(const DistParams& params, double u);

/// CDF (used for sampling checks and surrogate validation).
double cdf(const DistParams& params, double x);

/// A maximum-likelihood fit of one family to one sample.
struct FitResult {
    DistParams params;
    double log_likelihood = 0.0;
    std::size_t sample_size = 0;

    DistributionFamily family() const { return family_of(params); }
};

/// Divergence estimate of a sample against one fitted family; lower is a
/// better fit, with 0 meaning the sample matches the fitted density.
struct KldScore {
    DistributionFamily family;
    double divergence = 0.0;
};

/// Maximum-likelihood fit via Nelder-Mead on a log-reparameterized surface
/// (moment starts for Weibull/Gamma, probability-weighted moments for GEV).
/// Requires sample size >= 10, strictly positive values for Weibull/Gamma,
/// and a non-degenerate sample. Throws FitError / ConvergenceError.
FitResult fit(std::span<const double> sample, DistributionFamily family);

/// Default spacing window m = floor(sqrt(n)).
std::size_t default_vasicek_window(std::size_t n);

/// Spacing-based differential entropy estimate
///   H = (1/n) Σ ln{ (n / 2m) [X_(i+m) - X_(i-m)] }
/// with order-statistic indices clamped to [1, n] and spacings clamped to
/// 1e-12 so ties stay finite. Requires 1 <= m < n/2.
double vasicek_entropy(std::span<const double> sample, std::size_t m);

/// Kullback-Leibler divergence estimate
///   D = -H_mn - (1/n) Σ ln q(X_i)
/// against the fitted density q. Throws SupportError naming the first
/// sample value outside q's support.
KldScore kld(std::span<const double> sample, const FitResult& fitted, std::size_t m);

/// Closed-form Gamma divergence: rescales the sample by the rate so the fit
/// is Gamma(α, 1), then evaluates
///   D = ln Γ(α) + mean(Y) - (α - 1) mean(ln Y) - H_mn(Y),  Y = βX.
/// Must agree with the generic cross-term route in kld().
double kld_gamma_eq8(std::span<const double> sample, const GammaParams& params,
                     std::size_t m);

/// Fits and scores all three families, returning scores ascending (best
/// first); exact ties resolve in the order Weibull < Gamma < GEV. A family
/// whose fit fails is skipped and described in *failures when given.
std::vector<KldScore> rank_families(std::span<const double> sample, std::size_t m,
                                    std::vector<std::string>* failures = nullptr);

}  // namespace windnet
