#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "windnet/distfit.hpp"

namespace windnet {

/// Deterministic random source. mt19937_64 has a standardized bit stream,
/// and all floating-point draws are derived from it with fixed arithmetic,
/// so sequences are reproducible across platforms for a given seed.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform on [0, 1) with 53 bits.
    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform on (0, 1): never returns an endpoint.
    double unit_open() {
        return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Standard normal via Box-Muller (pairs cached).
    double normal();

private:
    std::mt19937_64 engine_;
    double cached_ = 0.0;
    bool has_cached_ = false;
};

/// Stable sub-seed for stream `index` of a master seed (splitmix64 mix).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

/// Inverse-CDF draws; Gamma uses Marsaglia-Tsang. All are deterministic
/// per seed.
std::vector<double> sample_distribution(const DistParams& params, std::size_t n,
                                        std::uint64_t seed);
std::vector<double> sample_gaussian(double mean, double stddev, std::size_t n,
                                    std::uint64_t seed);

double sample_gamma_one(const GammaParams& params, Rng& rng);

}  // namespace windnet
