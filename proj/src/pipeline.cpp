#include "windnet/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include "windnet/csvio.hpp"
#include "windnet/distfit.hpp"
#include "windnet/errors.hpp"
#include "windnet/ingest.hpp"
#include "windnet/parallel.hpp"
#include "windnet/sampling.hpp"
#include "windnet/surrogate.hpp"
#include "windnet/svg.hpp"

namespace windnet {

namespace {

const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                          "#9467bd", "#8c564b", "#e377c2", "#17becf"};

std::string station_name(std::size_t index) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "S%03zu", index + 1);
    return buf;
}

std::vector<StationSeries> load_series(const PipelineConfig& config) {
    std::ifstream in(config.input, std::ios::binary);
    if (!in) {
        throw IoError("cannot read input CSV: " + config.input);
    }
    CsvSchema schema;
    schema.sample_interval = config.interval;
    schema.missing_sentinel = config.missing;
    return parse_station_csv(in, schema);
}

std::filesystem::path out_path(const PipelineConfig& config, const std::string& file) {
    return std::filesystem::path(config.out) / file;
}

void copy_station_meta(const PipelineConfig& config) {
    if (config.station_meta.empty()) return;
    std::ifstream in(config.station_meta, std::ios::binary);
    if (!in) {
        throw IoError("cannot read station metadata: " + config.station_meta);
    }
    parse_station_meta(in);  // validate only; contents pass through untouched
    write_text_atomic(out_path(config, "stations.csv"), read_text(config.station_meta));
}

struct DensityBundle {
    std::vector<WindowedPanel> panels;
    std::vector<DensitySeries> densities;  // parallel to config.rules
};

DensityBundle compute_densities(const PipelineConfig& config,
                                const std::vector<StationSeries>& series) {
    DensityBundle bundle;
    bundle.panels = window_panel(series, config.window, config.utc_offset);
    if (bundle.panels.empty()) {
        throw ParamError("input span is shorter than one " + format_duration(config.window) +
                         " window");
    }
    bundle.densities = density_series_multi(bundle.panels, config.rules, config.min_overlap,
                                            config.threads);
    return bundle;
}

std::string density_csv(const DensitySeries& d) {
    CsvBuilder csv({"window_start", "rule", "density", "valid_pairs"});
    for (std::size_t w = 0; w < d.window_starts.size(); ++w) {
        csv.row({format_iso8601(d.window_starts[w]), d.rule.label(),
                 d.densities[w].has_value() ? format_double(*d.densities[w]) : "",
                 std::to_string(d.valid_pairs[w])});
    }
    return csv.str();
}

void write_density_svg(const PipelineConfig& config, const std::vector<DensitySeries>& densities,
                       const std::string& file, const std::string& title) {
    std::vector<SvgSeries> lines;
    for (std::size_t r = 0; r < densities.size(); ++r) {
        const auto& d = densities[r];
        SvgSeries line;
        line.label = d.rule.label();
        line.color = kPalette[r % std::size(kPalette)];
        for (std::size_t w = 0; w < d.window_starts.size(); ++w) {
            if (!d.densities[w].has_value()) continue;
            line.x.push_back(static_cast<double>(d.window_starts[w] - d.window_starts.front()) /
                             static_cast<double>(kSecondsPerDay));
            line.y.push_back(*d.densities[w]);
        }
        lines.push_back(std::move(line));
    }
    SvgOptions options;
    options.title = title;
    options.x_label = "days since first window";
    options.y_label = "connectivity density";
    write_text_atomic(out_path(config, file), render_line_chart(lines, options));
}

struct SpectrumRow {
    Periodogram robust;
    Periodogram classical;
};

SpectrumRow spectra_for(const PipelineConfig& config, const DensitySeries& d) {
    const std::vector<double> filled = interpolate_missing(d.densities, 7);
    if (filled.size() < 6) {
        throw ParamError("density series of " + std::to_string(filled.size()) +
                         " windows is too short for spectral analysis (need >= 6)");
    }
    const std::size_t lag = config.lag_max == 0 ? default_max_lag(filled.size()) : config.lag_max;
    SpectrumRow row{
        robust_periodogram(filled, lag, config.corr_method,
                           static_cast<double>(config.window)),
        classical_periodogram(filled, static_cast<double>(config.window)),
    };
    return row;
}

void append_periodogram_rows(CsvBuilder& csv, const Periodogram& p) {
    const bool robust = p.estimator == Estimator::Robust;
    for (std::size_t l = 0; l < p.size(); ++l) {
        csv.row({format_double(p.frequencies[l]),
                 l == 0 ? "" : format_double(p.period_seconds(l) / kSecondsPerDay),
                 format_double(p.powers[l]), std::string(estimator_name(p.estimator)),
                 robust ? std::to_string(p.max_lag) : "",
                 robust ? std::string(corr_method_name(p.method)) : ""});
    }
}

std::optional<std::pair<double, double>> annual_band_seconds() {
    return std::make_pair(kAnnualBandLoDays * kSecondsPerDay, kAnnualBandHiDays * kSecondsPerDay);
}

}  // namespace

std::vector<StationSeries> make_synthetic_corpus(const SynthOptions& options) {
    if (options.stations < 2 || options.days == 0) {
        throw ParamError("synthetic corpus needs >= 2 stations and >= 1 day");
    }
    if (options.sample_interval <= 0 || kSecondsPerDay % options.sample_interval != 0) {
        throw ParamError("synthetic sample interval must divide one day");
    }
    const auto per_day = static_cast<std::size_t>(kSecondsPerDay / options.sample_interval);
    const std::size_t n = options.days * per_day;

    // Shared shock stream; its seasonal amplitude drives the within-day
    // correlation between stations.
    std::vector<double> shared(n);
    {
        Rng rng(derive_seed(options.seed, 0));
        for (auto& v : shared) v = rng.normal();
    }
    std::vector<double> amplitude(options.days);
    for (std::size_t d = 0; d < options.days; ++d) {
        const double rho =
            std::clamp(options.base_corr + options.corr_swing *
                                               std::cos(2.0 * std::numbers::pi *
                                                        static_cast<double>(d) / 365.25),
                       0.02, 0.98);
        amplitude[d] = std::sqrt(rho / (1.0 - rho));
    }
    const auto in_phase = static_cast<std::size_t>(
        std::llround(static_cast<double>(options.stations) * (1.0 - options.anti_fraction)));

    std::vector<StationSeries> corpus(options.stations);
    parallel_for(options.stations, effective_threads(), [&](std::size_t i) {
        Rng rng(derive_seed(options.seed, i + 1));
        StationSeries s;
        s.station_id = station_name(i);
        s.sample_interval = options.sample_interval;
        s.start = options.start;
        s.values.resize(n);
        const double sign = i < in_phase ? 1.0 : -1.0;
        for (std::size_t t = 0; t < n; ++t) {
            double x = sign * amplitude[t / per_day] * shared[t] + rng.normal();
            if (options.nonneg) {
                x = std::max(0.0, options.nonneg_offset + options.nonneg_scale * x);
            }
            s.values[t] = x;
        }
        corpus[i] = std::move(s);
    });
    return corpus;
}

int cmd_fit(const PipelineConfig& config) {
    validate_config(config);
    const std::vector<StationSeries> series = load_series(config);
    copy_station_meta(config);

    struct StationFit {
        std::vector<FitResult> fits;
        std::vector<KldScore> scores;
        std::vector<std::string> warnings;
    };
    std::vector<StationFit> results(series.size());

    parallel_for(series.size(), effective_threads(config.threads), [&](std::size_t i) {
        const auto& s = series[i];
        std::vector<double> sample;
        sample.reserve(s.values.size());
        std::size_t dropped = 0;
        for (const auto& v : s.values) {
            if (!v.has_value()) continue;
            if (*v > 0.0) {
                sample.push_back(*v);
            } else {
                ++dropped;
            }
        }
        if (sample.size() < 10) {
            throw FitError("station " + s.station_id + ": only " +
                           std::to_string(sample.size()) + " positive observations");
        }
        StationFit& out = results[i];
        if (dropped > 0) {
            out.warnings.push_back("station " + s.station_id + ": dropped " +
                                   std::to_string(dropped) + " zero-speed observations");
        }
        const std::size_t m =
            config.vasicek_m == 0 ? default_vasicek_window(sample.size()) : config.vasicek_m;
        for (DistributionFamily family : {DistributionFamily::Weibull, DistributionFamily::Gamma,
                                          DistributionFamily::Gev}) {
            try {
                FitResult fitted = fit(sample, family);
                out.scores.push_back(kld(sample, fitted, m));
                out.fits.push_back(std::move(fitted));
            } catch (const Error& e) {
                out.warnings.push_back("station " + s.station_id + ": " +
                                       std::string(family_name(family)) +
                                       " fit skipped: " + e.what());
            }
        }
    });

    CsvBuilder fits_csv({"station", "family", "param1", "param2", "param3", "loglik", "kld"});
    double mean_kld[3] = {0.0, 0.0, 0.0};
    std::size_t counts[3] = {0, 0, 0};
    for (std::size_t i = 0; i < series.size(); ++i) {
        for (const auto& w : results[i].warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
        for (std::size_t f = 0; f < results[i].fits.size(); ++f) {
            const FitResult& fitted = results[i].fits[f];
            const KldScore& score = results[i].scores[f];
            std::string p1, p2, p3;
            if (const auto* w = std::get_if<WeibullParams>(&fitted.params)) {
                p1 = format_double(w->shape);
                p2 = format_double(w->scale);
            } else if (const auto* g = std::get_if<GammaParams>(&fitted.params)) {
                p1 = format_double(g->shape);
                p2 = format_double(g->rate);
            } else {
                const auto& e = std::get<GevParams>(fitted.params);
                p1 = format_double(e.location);
                p2 = format_double(e.scale);
                p3 = format_double(e.shape);
            }
            fits_csv.row({series[i].station_id, std::string(family_name(score.family)), p1, p2,
                          p3, format_double(fitted.log_likelihood),
                          format_double(score.divergence)});
            const auto idx = static_cast<std::size_t>(score.family);
            mean_kld[idx] += score.divergence;
            counts[idx] += 1;
        }
    }
    write_text_atomic(out_path(config, "fits.csv"), fits_csv.str());

    CsvBuilder summary({"family", "mean_kld", "stations"});
    for (DistributionFamily family : {DistributionFamily::Weibull, DistributionFamily::Gamma,
                                      DistributionFamily::Gev}) {
        const auto idx = static_cast<std::size_t>(family);
        summary.row({std::string(family_name(family)),
                     counts[idx] == 0 ? ""
                                      : format_double(mean_kld[idx] /
                                                      static_cast<double>(counts[idx])),
                     std::to_string(counts[idx])});
    }
    write_text_atomic(out_path(config, "kld_summary.csv"), summary.str());
    return 0;
}

int cmd_density(const PipelineConfig& config) {
    validate_config(config);
    const std::vector<StationSeries> series = load_series(config);
    copy_station_meta(config);
    const DensityBundle bundle = compute_densities(config, series);

    const MissingnessReport report = missing_report(series, config.window, config.utc_offset);
    CsvBuilder stations_csv({"station", "missing_fraction"});
    for (const auto& [station, fraction] : report.per_station_fraction) {
        stations_csv.row({station, format_double(fraction)});
    }
    stations_csv.row({"total", format_double(report.total_fraction)});
    write_text_atomic(out_path(config, "missingness.csv"), stations_csv.str());
    CsvBuilder windows_csv({"window_start", "missing_fraction"});
    for (std::size_t w = 0; w < report.per_window_fraction.size(); ++w) {
        windows_csv.row({format_iso8601(bundle.panels[w].window_start),
                         format_double(report.per_window_fraction[w])});
    }
    write_text_atomic(out_path(config, "missingness_windows.csv"), windows_csv.str());

    for (const auto& d : bundle.densities) {
        write_text_atomic(out_path(config, "density_" + d.rule.name() + ".csv"),
                          density_csv(d));
    }
    write_density_svg(config, bundle.densities, "density_series.svg",
                      "Daily connectivity density");

    if (!config.graph_window.empty()) {
        const Timestamp want = parse_iso8601(config.graph_window);
        const WindowedPanel* panel = nullptr;
        for (const auto& p : bundle.panels) {
            if (p.window_start == want) {
                panel = &p;
                break;
            }
        }
        if (panel == nullptr) {
            throw ParamError("graph_window " + config.graph_window +
                             " matches no window; first is " +
                             format_iso8601(bundle.panels.front().window_start) + ", last is " +
                             format_iso8601(bundle.panels.back().window_start));
        }
        const CorrelationMatrix matrix = correlation_matrix(*panel, config.min_overlap);
        for (const auto& rule : config.rules) {
            const CorrelationGraph graph = apply_rule(matrix, rule);
            CsvBuilder csv({"station_a", "station_b", "rho"});
            for (const auto& [i, j] : graph.edges) {
                csv.row({matrix.station_ids[i], matrix.station_ids[j],
                         format_double(matrix.at(i, j))});
            }
            write_text_atomic(out_path(config, "graph_" + rule.name() + ".csv"), csv.str());
        }
    }
    return 0;
}

int cmd_periodogram(const PipelineConfig& config) {
    validate_config(config);
    const std::vector<StationSeries> series = load_series(config);
    const DensityBundle bundle = compute_densities(config, series);

    CsvBuilder peaks({"rule", "estimator", "L", "method", "peak_frequency", "peak_period_days",
                      "peak_power", "annual_period_days", "annual_power"});
    std::vector<SvgSeries> lines;
    for (std::size_t r = 0; r < bundle.densities.size(); ++r) {
        const auto& d = bundle.densities[r];
        const SpectrumRow row = spectra_for(config, d);

        CsvBuilder csv({"frequency", "period_days", "power", "estimator", "L", "method"});
        append_periodogram_rows(csv, row.robust);
        append_periodogram_rows(csv, row.classical);
        write_text_atomic(out_path(config, "periodogram_" + d.rule.name() + ".csv"), csv.str());

        for (const Periodogram* p : {&row.robust, &row.classical}) {
            const PeakReport peak = peak_period(*p);
            std::string annual_period, annual_power;
            try {
                const PeakReport annual = peak_period(*p, annual_band_seconds());
                annual_period = format_double(annual.period_s / kSecondsPerDay);
                annual_power = format_double(annual.power);
            } catch (const BandError&) {
                // Series shorter than the annual band; leave the cells empty.
            }
            const bool robust = p->estimator == Estimator::Robust;
            peaks.row({d.rule.label(), std::string(estimator_name(p->estimator)),
                       robust ? std::to_string(p->max_lag) : "",
                       robust ? std::string(corr_method_name(p->method)) : "",
                       format_double(peak.frequency),
                       format_double(peak.period_s / kSecondsPerDay),
                       format_double(peak.power), annual_period, annual_power});
        }

        SvgSeries line;
        line.label = d.rule.label();
        line.color = kPalette[r % std::size(kPalette)];
        for (std::size_t l = 1; l < row.robust.size(); ++l) {
            line.x.push_back(row.robust.period_seconds(l) / kSecondsPerDay);
            line.y.push_back(row.robust.powers[l]);
        }
        lines.push_back(std::move(line));
    }
    write_text_atomic(out_path(config, "peaks.csv"), peaks.str());

    SvgOptions options;
    options.title = "Robust periodogram of connectivity density";
    options.x_label = "period (days)";
    options.y_label = "power";
    options.log_x = true;
    options.marker_x = 365.25;
    write_text_atomic(out_path(config, "periodograms.svg"), render_line_chart(lines, options));
    return 0;
}

int cmd_surrogate(const PipelineConfig& config) {
    validate_config(config);
    const std::vector<StationSeries> series = load_series(config);
    const DensityBundle real = compute_densities(config, series);

    // Per-station GEV fits on all present observations.
    std::vector<GevParams> fitted(series.size());
    parallel_for(series.size(), effective_threads(config.threads), [&](std::size_t i) {
        std::vector<double> sample;
        sample.reserve(series[i].values.size());
        for (const auto& v : series[i].values) {
            if (v.has_value()) sample.push_back(*v);
        }
        try {
            fitted[i] = std::get<GevParams>(fit(sample, DistributionFamily::Gev).params);
        } catch (const Error& e) {
            throw FitError("surrogate: station " + series[i].station_id + ": " + e.what());
        }
    });

    SurrogateSpec spec;
    Timestamp span_start = std::numeric_limits<Timestamp>::max();
    Timestamp span_end = std::numeric_limits<Timestamp>::min();
    for (std::size_t i = 0; i < series.size(); ++i) {
        spec.fits.emplace_back(series[i].station_id, fitted[i]);
        span_start = std::min(span_start, series[i].start);
        span_end = std::max(span_end, series[i].end());
    }
    spec.n_samples = static_cast<std::size_t>((span_end - span_start) / config.interval);
    spec.start = span_start;
    spec.sample_interval = config.interval;
    spec.seed = config.seed;
    spec.rules = config.rules;

    const SurrogateOutcome outcome =
        surrogate_experiment(spec, config.window, config.min_overlap, config.lag_max,
                             config.corr_method, config.threads);

    CsvBuilder params_csv({"station", "mu", "sigma", "xi"});
    for (const auto& [station, p] : spec.fits) {
        params_csv.row({station, format_double(p.location), format_double(p.scale),
                        format_double(p.shape)});
    }
    write_text_atomic(out_path(config, "surrogate_gev_params.csv"), params_csv.str());

    CsvBuilder table({"rule", "real_annual_ratio", "surrogate_annual_ratio",
                      "real_peak_period_days", "surrogate_peak_period_days"});
    for (std::size_t r = 0; r < config.rules.size(); ++r) {
        write_text_atomic(
            out_path(config, "surrogate_density_" + config.rules[r].name() + ".csv"),
            density_csv(outcome.densities[r]));

        const SpectrumRow real_row = spectra_for(config, real.densities[r]);
        const SpectrumRow surr_row = spectra_for(config, outcome.densities[r]);
        CsvBuilder csv({"frequency", "period_days", "power", "estimator", "L", "method"});
        append_periodogram_rows(csv, surr_row.robust);
        write_text_atomic(
            out_path(config, "surrogate_periodogram_" + config.rules[r].name() + ".csv"),
            csv.str());

        table.row({config.rules[r].label(),
                   format_double(annual_peak_ratio(real_row.robust)),
                   format_double(outcome.annual_peak_ratio[r]),
                   format_double(peak_period(real_row.robust).period_s / kSecondsPerDay),
                   format_double(peak_period(surr_row.robust).period_s / kSecondsPerDay)});
    }
    write_text_atomic(out_path(config, "surrogate_peaks.csv"), table.str());

    CsvBuilder range({"connected_from", "connected_to"});
    if (outcome.connected_range.has_value()) {
        range.row({format_double(outcome.connected_range->first),
                   format_double(outcome.connected_range->second)});
    }
    write_text_atomic(out_path(config, "surrogate_connected_range.csv"), range.str());

    write_density_svg(config, outcome.densities, "surrogate_density_series.svg",
                      "Connectivity density of iid GEV surrogates");
    return 0;
}

int cmd_report(const PipelineConfig& config) {
    cmd_fit(config);
    cmd_density(config);
    cmd_periodogram(config);
    cmd_surrogate(config);
    return 0;
}

int cmd_synth(const std::filesystem::path& out_csv, const SynthOptions& options) {
    SynthOptions opts = options;
    opts.nonneg = true;
    const std::vector<StationSeries> corpus = make_synthetic_corpus(opts);
    std::ostringstream text;
    write_station_csv(text, corpus);
    write_text_atomic(out_csv, text.str());
    return 0;
}

}  // namespace windnet
