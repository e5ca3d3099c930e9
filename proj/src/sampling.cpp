#include "windnet/sampling.hpp"

#include <cmath>
#include <numbers>

#include "windnet/errors.hpp"

namespace windnet {

double Rng::normal() {
    if (has_cached_) {
        has_cached_ = false;
        return cached_;
    }
    const double u1 = unit_open();
    const double u2 = unit();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    cached_ = r * std::sin(theta);
    has_cached_ = true;
    return r * std::cos(theta);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    // splitmix64 finalizer over the combined state.
    std::uint64_t z = master + 0x9E3779B97F4A7C15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double sample_gamma_one(const GammaParams& params, Rng& rng) {
    // Marsaglia-Tsang squeeze; the alpha < 1 case boosts an alpha+1 draw.
    double alpha = params.shape;
    double boost = 1.0;
    if (alpha < 1.0) {
        boost = std::pow(rng.unit_open(), 1.0 / alpha);
        alpha += 1.0;
    }
    const double d = alpha - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = rng.normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = rng.unit_open();
        if (u < 1.0 - 0.0331 * x * x * x * x) {
            return boost * d * v / params.rate;
        }
        if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) {
            return boost * d * v / params.rate;
        }
    }
}

std::vector<double> sample_distribution(const DistParams& params, std::size_t n,
                                        std::uint64_t seed) {
    Rng rng(seed);
    std::vector<double> out(n);
    if (const auto* gamma = std::get_if<GammaParams>(&params)) {
        if (gamma->shape <= 0.0 || gamma->rate <= 0.0) {
            throw ParamError("gamma sampler requires positive shape and rate");
        }
        for (auto& v : out) v = sample_gamma_one(*gamma, rng);
        return out;
    }
    for (auto& v : out) v = quantile(params, rng.unit_open());
    return out;
}

std::vector<double> sample_gaussian(double mean, double stddev, std::size_t n,
                                    std::uint64_t seed) {
    Rng rng(seed);
    std::vector<double> out(n);
    for (auto& v : out) v = mean + stddev * rng.normal();
    return out;
}

}  // namespace windnet
