#ifndef DYNLOC_EXPERIMENTS_HPP
#define DYNLOC_EXPERIMENTS_HPP

// Experiment orchestration: each experiment maps a validated RunConfig to
// one or more CSV files plus a JSON manifest in config.output_path.
// On failure, files written by the failed run are removed.

#include <chrono>
#include <filesystem>
#include <vector>

#include "dynloc/analysis.hpp"
#include "dynloc/classical.hpp"
#include "dynloc/config.hpp"
#include "dynloc/forcing.hpp"
#include "dynloc/husimi.hpp"
#include "dynloc/io.hpp"
#include "dynloc/quantum.hpp"

namespace dynloc {

namespace detail {

inline ScaledParams params_from(const RunConfig& c, double m, double lambda) {
    return {c.kappa, lambda, EllipticParameter(m), c.hbar_eff};
}

inline DlSettings dl_settings_from(const RunConfig& c, int threads) {
    DlSettings s;
    s.ensemble_size = c.ensemble_size;
    s.classical_steps_per_period = c.classical_steps_per_period;
    s.n_periods = c.n_periods;
    s.avg_strobes = c.avg_strobes;
    s.n_packets = c.n_packets;
    s.grid = SpatialGrid(c.n_cells, c.points_per_cell);
    s.quantum_steps_per_period = c.quantum_steps_per_period;
    s.dp0 = c.dp0;
    s.seed = c.seed;
    s.threads = threads;
    return s;
}

inline PhaseSpaceGrid husimi_window_from(const RunConfig& c) {
    PhaseSpaceGrid w;
    w.nx = c.husimi_nx;
    w.np = c.husimi_np;
    w.p_min = c.husimi_p_min;
    w.p_max = c.husimi_p_max;
    w.validate();
    return w;
}

inline void write_husimi_csv(const std::filesystem::path& path, const HusimiGrid& grid) {
    CsvWriter csv(path);
    csv.header({"x", "p", "value"});
    for (int i = 0; i < grid.window.nx; ++i)
        for (int k = 0; k < grid.window.np; ++k)
            csv.row({grid.window.x(i), grid.window.p(k), grid.at(i, k)});
}

class OutputTracker {
public:
    explicit OutputTracker(std::filesystem::path dir) : dir_(std::move(dir)) {
        std::filesystem::create_directories(dir_);
    }
    std::filesystem::path file(const std::string& name) {
        created_.push_back(dir_ / name);
        return created_.back();
    }
    void remove_all() {
        std::error_code ec;
        for (const auto& p : created_)
            std::filesystem::remove(p, ec);
    }

private:
    std::filesystem::path dir_;
    std::vector<std::filesystem::path> created_;
};

inline void run_waveform_table(const RunConfig& c, OutputTracker& files) {
    CsvWriter csv(files.file("waveform_table.csv"));
    csv.header({"m", "tau", "force"});
    constexpr int samples = 512;
    for (const double m : c.m_list) {
        const Waveform f{EllipticParameter(m)};
        for (int i = 0; i <= samples; ++i) {
            const double tau = Waveform::period * i / samples;
            csv.row({m, tau, f(tau)});
        }
    }
}

inline void run_impulse_curve(const RunConfig& c, OutputTracker& files) {
    CsvWriter csv(files.file("impulse_curve.csv"));
    csv.header({"m", "N", "I_closed", "I_quadrature", "I_normalized"});
    const double i0 = impulse_closed_form(EllipticParameter(0.0), Waveform::period);
    for (const double m : c.m_grid) {
        const EllipticParameter em(m);
        const double ic = impulse_closed_form(em, Waveform::period);
        const double iq = impulse_quadrature(em, Waveform::period);
        csv.row({m, normalization(em), ic, iq, ic / i0});
    }
}

inline void run_layer_width_curve(const RunConfig& c, OutputTracker& files) {
    CsvWriter csv(files.file("layer_width_curve.csv"));
    csv.header({"m", "d", "n_terms", "truncation_error_bound"});
    for (const double m : c.m_grid) {
        const LayerWidthResult r = layer_width(c.lambda, c.kappa, EllipticParameter(m));
        csv.row({m, r.d, static_cast<double>(r.n_terms), r.truncation_error_bound});
    }
}

inline void run_dp_sweep_lambda(const RunConfig& c, OutputTracker& files, int threads) {
    CsvWriter csv(files.file("dp_sweep_lambda.csv"));
    csv.header({"m", "lambda", "dp_c", "dp_q", "dp_cmq"});
    const DlSettings s = dl_settings_from(c, threads);
    for (const double m : c.m_list)
        for (const double lambda : c.lambda_grid) {
            const SweepRecord r = dl_strength(params_from(c, m, lambda), s);
            csv.row({r.m, r.lambda, r.dp_c, r.dp_q, r.dp_cmq});
        }
}

inline void run_dp_sweep_m(const RunConfig& c, OutputTracker& files, int threads) {
    CsvWriter csv(files.file("dp_sweep_m.csv"));
    csv.header({"m", "lambda", "dp_c", "dp_q", "dp_cmq", "impulse_norm", "layer_width",
                "impulse_scaled", "layer_width_scaled"});
    const DlSettings s = dl_settings_from(c, threads);
    const std::vector<SweepRecord> rows =
        correlation_study(c.kappa, c.lambda, c.hbar_eff, c.m_grid, s);
    // Fig. 3 presentation scalings: 3I/4 and 3d/5 in the emitted columns only.
    for (const SweepRecord& r : rows)
        csv.row({r.m, r.lambda, r.dp_c, r.dp_q, r.dp_cmq, r.impulse_norm, r.layer_width,
                 0.75 * r.impulse_norm, 0.6 * r.layer_width});
}

inline void run_psos(const RunConfig& c, OutputTracker& files, int threads) {
    const ScaledParams params = params_from(c, c.m, c.lambda);
    EvolveSettings ev;
    ev.steps_per_period = c.classical_steps_per_period;
    ev.threads = threads;
    const std::vector<PhaseState> ics =
        psos_grid(c.psos_nx, c.psos_np, c.psos_p_min, c.psos_p_max);
    const SurfaceOfSection sec = psos(ics, c.psos_periods, params, ev);
    CsvWriter csv(files.file("psos.csv"));
    csv.header({"x", "p"});
    for (const PhaseState& s : sec.points)
        csv.row({s.x, s.p});
}

inline void run_qsos(const RunConfig& c, OutputTracker& files, int threads) {
    const ScaledParams params = params_from(c, c.m, c.lambda);
    QuantumSettings qs;
    qs.steps_per_period = c.quantum_steps_per_period;
    qs.dp0 = c.dp0;
    qs.threads = threads;
    const HusimiGrid avg =
        qsos_average(c.x0, c.p0, c.n_periods, params, SpatialGrid(c.n_cells, c.points_per_cell),
                     husimi_window_from(c), c.husimi_alpha, c.husimi_images, qs);
    write_husimi_csv(files.file("qsos.csv"), avg);
}

inline void run_qsos_sequence(const RunConfig& c, OutputTracker& files, int threads) {
    const ScaledParams params = params_from(c, c.m, c.lambda);
    QuantumSettings qs;
    qs.steps_per_period = c.quantum_steps_per_period;
    qs.dp0 = c.dp0;
    qs.threads = threads;
    const std::vector<HusimiGrid> frames = qsos_sequence(
        c.x0, c.p0, c.n_periods, params, SpatialGrid(c.n_cells, c.points_per_cell),
        husimi_window_from(c), c.husimi_alpha, c.husimi_images, qs);
    HusimiGrid total;
    for (std::size_t j = 0; j < frames.size(); ++j) {
        char name[48];
        std::snprintf(name, sizeof name, "qsos_strobe_%03zu.csv", j + 1);
        write_husimi_csv(files.file(name), frames[j]);
        if (j == 0)
            total = frames[j];
        else
            for (std::size_t i = 0; i < total.values.size(); ++i)
                total.values[i] += frames[j].values[i];
    }
    const double integral = total.integral();
    if (integral > 0.0)
        for (auto& v : total.values)
            v /= integral;
    total.normalization = 1.0;
    write_husimi_csv(files.file("qsos_average.csv"), total);
}

}  // namespace detail

// Runs the configured experiment; writes outputs and manifest.json under
// config.output_path. Partial outputs are removed if the run fails.
inline void run_experiment(const RunConfig& config) {
    validate(config);
    const auto start = std::chrono::steady_clock::now();
    detail::OutputTracker files{std::filesystem::path(config.output_path)};
    const int threads = resolve_threads(config.threads);
    try {
        switch (config.experiment) {
        case Experiment::waveform_table:
            detail::run_waveform_table(config, files);
            break;
        case Experiment::impulse_curve:
            detail::run_impulse_curve(config, files);
            break;
        case Experiment::layer_width_curve:
            detail::run_layer_width_curve(config, files);
            break;
        case Experiment::dp_sweep_lambda:
            detail::run_dp_sweep_lambda(config, files, threads);
            break;
        case Experiment::dp_sweep_m:
            detail::run_dp_sweep_m(config, files, threads);
            break;
        case Experiment::psos:
            detail::run_psos(config, files, threads);
            break;
        case Experiment::qsos:
            detail::run_qsos(config, files, threads);
            break;
        case Experiment::qsos_sequence:
            detail::run_qsos_sequence(config, files, threads);
            break;
        }
        const double wall =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        write_manifest(files.file("manifest.json"), config, wall);
    } catch (...) {
        files.remove_all();
        throw;
    }
}

}  // namespace dynloc

#endif
