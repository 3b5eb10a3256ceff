// dynloc command line runner: read a flat key = value config, apply flag
// overrides, run the experiment, write CSV outputs plus manifest.json.
//
// Exit codes: 0 success, 1 configuration/validation error, 2 runtime error.

#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include <dynloc/dynloc.hpp>

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw dynloc::ConfigError("cannot read config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string default_config_help() {
    std::ostringstream out;
    out << "Config keys and defaults (flat 'key = value' lines, '#' comments;\n"
           "grids accept 'start:step:stop' or comma lists):\n\n";
    std::istringstream defaults(dynloc::emit_config(dynloc::RunConfig{}));
    std::string line;
    while (std::getline(defaults, line))
        out << "  " << line << '\n';
    return out.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Shaken-lattice dynamical localization simulator"};
    app.footer(default_config_help());

    std::string config_path;
    std::optional<std::string> output_dir;
    std::optional<std::uint64_t> seed;
    std::optional<int> threads;
    std::optional<std::string> experiment;

    app.add_option("--config", config_path, "Path to the run configuration file");
    app.add_option("--output", output_dir, "Output directory (overrides output_path)");
    app.add_option("--seed", seed, "RNG seed (overrides config)");
    app.add_option("--threads", threads, "Worker threads, 0 = all cores (overrides config)");
    app.add_option("--experiment", experiment,
                   "Experiment name (overrides config): waveform_table, impulse_curve, "
                   "layer_width_curve, dp_sweep_lambda, dp_sweep_m, psos, qsos, qsos_sequence");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        dynloc::RunConfig config =
            config_path.empty() ? dynloc::RunConfig{} : dynloc::parse_config(read_file(config_path));
        if (output_dir)
            config.output_path = *output_dir;
        if (seed)
            config.seed = *seed;
        if (threads)
            config.threads = *threads;
        if (experiment) {
            const auto& names = dynloc::experiment_names();
            const auto it = names.find(*experiment);
            if (it == names.end())
                throw dynloc::ConfigError("unknown experiment '" + *experiment + "'");
            config.experiment = it->second;
        }
        dynloc::validate(config);
        dynloc::run_experiment(config);
    } catch (const dynloc::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 1;
    } catch (const std::domain_error& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
