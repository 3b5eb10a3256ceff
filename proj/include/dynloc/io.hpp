#ifndef DYNLOC_IO_HPP
#define DYNLOC_IO_HPP

// CSV emission (full double precision, byte-reproducible) and the JSON
// run manifest.

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

#include "dynloc/config.hpp"
#include "dynloc/version.hpp"

namespace dynloc {

class CsvWriter {
public:
    explicit CsvWriter(const std::filesystem::path& path) : out_(path) {
        if (!out_)
            throw std::runtime_error("cannot open output file " + path.string());
    }

    void header(std::initializer_list<std::string_view> names) {
        bool first = true;
        for (const auto& n : names) {
            if (!first)
                out_ << ',';
            out_ << n;
            first = false;
        }
        out_ << '\n';
    }

    void row(std::initializer_list<double> values) {
        bool first = true;
        for (const double v : values) {
            if (!first)
                out_ << ',';
            out_ << format_g17(v);
            first = false;
        }
        out_ << '\n';
    }

    void close() { out_.close(); }

private:
    std::ofstream out_;
};

inline nlohmann::json config_to_json(const RunConfig& c) {
    nlohmann::json j;
    j["experiment"] = experiment_name(c.experiment);
    j["kappa"] = c.kappa;
    j["lambda"] = c.lambda;
    j["m"] = c.m;
    j["hbar_eff"] = c.hbar_eff;
    j["dp0"] = c.dp0;
    j["m_grid"] = c.m_grid;
    j["lambda_grid"] = c.lambda_grid;
    j["m_list"] = c.m_list;
    j["ensemble_size"] = c.ensemble_size;
    j["classical_steps_per_period"] = c.classical_steps_per_period;
    j["n_periods"] = c.n_periods;
    j["avg_strobes"] = c.avg_strobes;
    j["n_cells"] = c.n_cells;
    j["points_per_cell"] = c.points_per_cell;
    j["quantum_steps_per_period"] = c.quantum_steps_per_period;
    j["n_packets"] = c.n_packets;
    j["x0"] = c.x0;
    j["p0"] = c.p0;
    j["psos_nx"] = c.psos_nx;
    j["psos_np"] = c.psos_np;
    j["psos_p_min"] = c.psos_p_min;
    j["psos_p_max"] = c.psos_p_max;
    j["psos_periods"] = c.psos_periods;
    j["husimi_nx"] = c.husimi_nx;
    j["husimi_np"] = c.husimi_np;
    j["husimi_p_min"] = c.husimi_p_min;
    j["husimi_p_max"] = c.husimi_p_max;
    j["husimi_alpha"] = c.husimi_alpha;
    j["husimi_images"] = c.husimi_images;
    j["seed"] = c.seed;
    j["threads"] = c.threads;
    j["output_path"] = c.output_path;
    return j;
}

inline void write_manifest(const std::filesystem::path& path, const RunConfig& config,
                           double wall_seconds) {
    nlohmann::json j;
    j["code_version"] = version;
    j["seed"] = config.seed;
    j["wall_time_seconds"] = wall_seconds;
    j["config"] = config_to_json(config);
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open manifest file " + path.string());
    out << j.dump(2) << '\n';
}

}  // namespace dynloc

#endif
