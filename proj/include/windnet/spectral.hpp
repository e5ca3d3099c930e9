#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace windnet {

/// y_n = β cos(ω n + φ) + ε_n with iid zero-mean noise of variance σ².
struct SignalModel {
    double beta = 1.0;    // amplitude, > 0 (0 allowed for pure noise)
    double omega = 0.1;   // angular frequency in (0, π)
    double phi = 0.0;     // phase in (-π, π]
    double sigma = 0.0;   // noise standard deviation, >= 0
    std::size_t n = 0;
};

enum class Estimator { Classical, Correlogram, Robust };
enum class CorrMethod { Pearson, SpearmanRank };

std::string_view estimator_name(Estimator e);
std::string_view corr_method_name(CorrMethod m);
CorrMethod parse_corr_method(std::string_view text);

/// Power spectrum on the normalized grid ω_l = 2πl/N, l = 0..⌊(N-1)/2⌋.
/// Classical/correlogram powers are >= 0 up to rounding; robust powers may
/// be negative (real part of a truncated sum).
struct Periodogram {
    std::vector<double> frequencies;
    std::vector<double> powers;
    Estimator estimator = Estimator::Classical;
    std::size_t max_lag = 0;                         // Robust only
    CorrMethod method = CorrMethod::SpearmanRank;    // Robust only
    std::size_t series_length = 0;                   // N
    double sample_interval_s = 1.0;                  // converts bins to periods

    std::size_t size() const { return frequencies.size(); }

    /// Physical period of bin l: N * Δt / l. Infinite at l = 0.
    double period_seconds(std::size_t bin) const;
};

/// Maximum-power bin, optionally restricted to a period band.
struct PeakReport {
    std::size_t bin = 0;
    double frequency = 0.0;
    double period_s = 0.0;
    double power = 0.0;
    std::optional<std::pair<double, double>> band_s;  // searched period band
};

/// Deterministic cosine-plus-noise draw from the signal model.
std::vector<double> synth_cosine(const SignalModel& model, std::uint64_t seed);

/// I(ω) = (1/N) |Σ y_n e^(-iωn)|² on the normalized grid, after mean
/// removal. Requires N >= 4.
Periodogram classical_periodogram(std::span<const double> y, double sample_interval_s = 1.0);

/// Biased autocorrelation r(m) = (1/N) Σ_{k=1..N-m} y_k y_{k+m}; the input
/// is used as given (no mean removal).
double autocorr_biased(std::span<const double> y, std::size_t lag);

/// S(ω) = Σ_{k=-N+1..N-1} r(k) e^(-iωk) of the mean-removed series; equals
/// the classical periodogram on the grid.
Periodogram correlogram_spectrum(std::span<const double> y, double sample_interval_s = 1.0);

/// Correlation of y_t with y_{t+k} over their overlap of length N-k, using
/// overlap statistics. SpearmanRank correlates mid-ranks of each overlap.
/// Requires an overlap of >= 3 points; throws ZeroVarianceError when either
/// side is constant on the overlap.
double robust_correlation(std::span<const double> y, std::size_t lag, CorrMethod method);

/// Truncated correlogram estimator of Ahdesmäki et al.:
///   S(ω) = 2 Re( Σ_{k=0..L} ρ(k) e^(iωk) ) - ρ(0)
/// on the normalized grid, after mean removal. Degenerate lags contribute
/// ρ(k) = 0 and are reported through degenerate_lags when given. Requires
/// 3 <= L <= N-3.
Periodogram robust_periodogram(std::span<const double> y, std::size_t max_lag,
                               CorrMethod method, double sample_interval_s = 1.0,
                               std::vector<std::size_t>* degenerate_lags = nullptr);

/// Default maximum lag ⌊N/3⌋ clamped to the valid range.
std::size_t default_max_lag(std::size_t n);

/// Maximum-power bin with l = 0 excluded; ties resolve toward the lower
/// frequency. period_band_s restricts the search to bins whose physical
/// period lies inside [band.first, band.second] (throws BandError when the
/// band captures no bin).
PeakReport peak_period(const Periodogram& p,
                       std::optional<std::pair<double, double>> period_band_s = {});

/// Fills missing slots by linear interpolation (nearest value at the edges)
/// for runs of at most max_run; longer runs raise GapError.
std::vector<double> interpolate_missing(std::span<const std::optional<double>> values,
                                        std::size_t max_run);

/// Fractional mid-ranks (ties averaged), 1-based.
std::vector<double> midranks(std::span<const double> values);

}  // namespace windnet
