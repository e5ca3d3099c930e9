#include <cstdio>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "windnet/config.hpp"
#include "windnet/errors.hpp"
#include "windnet/pipeline.hpp"

namespace {

struct RawOptions {
    std::string config_path;
    std::map<std::string, std::string> flags;  // config-file keys, flag wins
};

void add_pipeline_options(CLI::App* cmd, RawOptions& raw) {
    cmd->add_option("--config", raw.config_path, "key = value configuration file");
    // One flag per config key; a flag given on the command line overrides the
    // same key from the file.
    static const struct {
        const char* flag;
        const char* key;
        const char* help;
    } kFlags[] = {
        {"--input", "input", "station CSV (timestamp,station,speed)"},
        {"--station-meta", "station_meta", "optional station metadata CSV"},
        {"--out", "out", "output directory"},
        {"--interval", "interval", "sampling interval, e.g. 10m"},
        {"--window", "window", "window length, e.g. 1d"},
        {"--utc-offset", "utc_offset", "window alignment offset, e.g. 1h"},
        {"--rules", "rules", "threshold rules, e.g. pos:0.2,neg:-0.4,abs:0.7,band:0.3:0.4"},
        {"--min-overlap", "min_overlap", "minimum pairwise overlap per window"},
        {"--vasicek-m", "vasicek_m", "entropy spacing window (0 = sqrt(n))"},
        {"--lag-max", "lag_max", "maximum lag L of the robust periodogram (0 = N/3)"},
        {"--corr-method", "corr_method", "lag correlation: pearson or spearman"},
        {"--seed", "seed", "random seed"},
        {"--missing", "missing", "extra missing-value sentinel"},
        {"--graph-window", "graph_window", "window start (ISO-8601) to export as edge lists"},
        {"--threads", "threads", "worker cap (0 = auto; WINDNET_THREADS also caps)"},
    };
    for (const auto& spec : kFlags) {
        const std::string key = spec.key;
        cmd->add_option_function<std::string>(
            spec.flag, [&raw, key](const std::string& value) { raw.flags[key] = value; },
            spec.help);
    }
}

windnet::PipelineConfig build_config(const RawOptions& raw) {
    windnet::PipelineConfig config;
    if (!raw.config_path.empty()) {
        windnet::apply_config_entries(windnet::parse_config_file(raw.config_path), config);
    }
    windnet::apply_config_entries(raw.flags, config);
    return config;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"windnet: correlation-network analysis of wind-speed monitoring data"};
    app.require_subcommand(1);

    RawOptions raw;
    struct Subcommand {
        const char* name;
        const char* help;
        int (*run)(const windnet::PipelineConfig&);
    };
    static const Subcommand kCommands[] = {
        {"fit", "fit Weibull/Gamma/GEV marginals and rank them by KLD", windnet::cmd_fit},
        {"density", "daily correlation networks and connectivity densities", windnet::cmd_density},
        {"periodogram", "robust periodograms of the density series", windnet::cmd_periodogram},
        {"surrogate", "iid GEV surrogate experiment (real vs simulated peaks)",
         windnet::cmd_surrogate},
        {"report", "run fit, density, periodogram and surrogate", windnet::cmd_report},
    };
    for (const auto& sub : kCommands) {
        add_pipeline_options(app.add_subcommand(sub.name, sub.help), raw);
    }

    auto* synth = app.add_subcommand("synth", "write a synthetic station corpus CSV");
    std::string synth_out = "synthetic.csv";
    windnet::SynthOptions synth_options;
    std::string synth_interval = "1h";
    synth->add_option("--out-file", synth_out, "output CSV path");
    synth->add_option("--stations", synth_options.stations, "number of stations");
    synth->add_option("--days", synth_options.days, "number of days");
    synth->add_option("--interval", synth_interval, "sampling interval, e.g. 10m");
    synth->add_option("--seed", synth_options.seed, "random seed");

    CLI11_PARSE(app, argc, argv);

    const std::string stage = app.get_subcommands().front()->get_name();
    try {
        if (stage == "synth") {
            synth_options.sample_interval = windnet::parse_duration(synth_interval);
            return windnet::cmd_synth(synth_out, synth_options);
        }
        const windnet::PipelineConfig config = build_config(raw);
        for (const auto& sub : kCommands) {
            if (stage == sub.name) return sub.run(config);
        }
    } catch (const windnet::IoError& e) {
        std::fprintf(stderr, "windnet %s: %s\n", stage.c_str(), e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "windnet %s: %s\n", stage.c_str(), e.what());
        return 1;
    }
    return 1;
}
