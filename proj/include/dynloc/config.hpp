#ifndef DYNLOC_CONFIG_HPP
#define DYNLOC_CONFIG_HPP

// Flat key = value run configuration with # comments. Unknown keys are
// rejected; every key has a documented default; grids accept either a
// comma list ("0,0.5,0.9") or a range "start:step:stop" (stop inclusive).

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "dynloc/elliptic.hpp"

namespace dynloc {

class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
    ConfigError(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what) {}
};

enum class Experiment {
    waveform_table,
    impulse_curve,
    layer_width_curve,
    dp_sweep_lambda,
    dp_sweep_m,
    psos,
    qsos,
    qsos_sequence,
};

inline const std::map<std::string, Experiment>& experiment_names() {
    static const std::map<std::string, Experiment> names = {
        {"waveform_table", Experiment::waveform_table},
        {"impulse_curve", Experiment::impulse_curve},
        {"layer_width_curve", Experiment::layer_width_curve},
        {"dp_sweep_lambda", Experiment::dp_sweep_lambda},
        {"dp_sweep_m", Experiment::dp_sweep_m},
        {"psos", Experiment::psos},
        {"qsos", Experiment::qsos},
        {"qsos_sequence", Experiment::qsos_sequence},
    };
    return names;
}

inline std::string experiment_name(Experiment e) {
    for (const auto& [name, value] : experiment_names())
        if (value == e)
            return name;
    throw std::logic_error("experiment_name: unmapped experiment");
}

struct RunConfig {
    Experiment experiment = Experiment::impulse_curve;

    // physics
    double kappa = 0.36;
    double lambda = 2.0;
    double m = 0.0;
    double hbar_eff = 0.16;
    double dp0 = 0.386;

    // sweep grids
    std::vector<double> m_grid = make_range(0.0, 0.01, 0.99);
    std::vector<double> lambda_grid = make_range(0.0, 0.25, 7.0);
    std::vector<double> m_list = {0.0, 0.5, 0.7, 0.9};

    // classical ensemble
    int ensemble_size = 100000;
    int classical_steps_per_period = 1000;

    // shared horizon
    int n_periods = 50;
    int avg_strobes = 10;

    // quantum grid and propagation
    int n_cells = 16;
    int points_per_cell = 64;
    int quantum_steps_per_period = 2048;
    int n_packets = 8;

    // packet launch point (qsos, qsos_sequence)
    double x0 = pi;
    double p0 = 1.0;

    // Poincare section scan
    int psos_nx = 24;
    int psos_np = 24;
    double psos_p_min = -3.0;
    double psos_p_max = 3.0;
    int psos_periods = 200;

    // Husimi window
    int husimi_nx = 128;
    int husimi_np = 128;
    double husimi_p_min = -3.0;
    double husimi_p_max = 3.0;
    double husimi_alpha = 3.0;
    int husimi_images = 4;

    // run control
    std::uint64_t seed = 12345;
    int threads = 0;  // 0 = all hardware threads
    std::string output_path = "out";

    friend bool operator==(const RunConfig&, const RunConfig&) = default;

    static std::vector<double> make_range(double start, double step, double stop) {
        if (!(step > 0.0) || stop < start)
            throw ConfigError("range must have step > 0 and stop >= start");
        std::vector<double> out;
        const int n = static_cast<int>(std::floor((stop - start) / step + 1e-9));
        out.reserve(static_cast<std::size_t>(n) + 1);
        for (int i = 0; i <= n; ++i)
            out.push_back(start + i * step);
        return out;
    }
};

namespace detail {

inline std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos)
        return {};
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

inline double parse_double(const std::string& v, int line) {
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size())
            throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError(line, "expected a number, got '" + v + "'");
    }
}

inline int parse_int(const std::string& v, int line) {
    try {
        std::size_t pos = 0;
        const long x = std::stol(v, &pos);
        if (pos != v.size() || x > 2147483647L || x < -2147483648L)
            throw std::invalid_argument(v);
        return static_cast<int>(x);
    } catch (const std::exception&) {
        throw ConfigError(line, "expected an integer, got '" + v + "'");
    }
}

inline std::uint64_t parse_u64(const std::string& v, int line) {
    try {
        std::size_t pos = 0;
        const std::uint64_t x = std::stoull(v, &pos);
        if (pos != v.size())
            throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError(line, "expected a non-negative integer, got '" + v + "'");
    }
}

// "a:b:c" range or "v1,v2,..." list or single value.
inline std::vector<double> parse_grid(const std::string& v, int line) {
    if (v.find(':') != std::string::npos) {
        std::vector<double> parts;
        std::stringstream ss(v);
        std::string tok;
        while (std::getline(ss, tok, ':'))
            parts.push_back(parse_double(trim(tok), line));
        if (parts.size() != 3)
            throw ConfigError(line, "range must be start:step:stop, got '" + v + "'");
        try {
            return RunConfig::make_range(parts[0], parts[1], parts[2]);
        } catch (const ConfigError& e) {
            throw ConfigError(line, e.what());
        }
    }
    std::vector<double> out;
    std::stringstream ss(v);
    std::string tok;
    while (std::getline(ss, tok, ','))
        out.push_back(parse_double(trim(tok), line));
    if (out.empty())
        throw ConfigError(line, "empty value list");
    return out;
}

}  // namespace detail

// 17 significant digits: enough to round-trip any double exactly.
inline std::string format_g17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline void validate(const RunConfig& c) {
    auto fail = [](const std::string& msg) { throw ConfigError("config: " + msg); };
    if (!(c.kappa > 0.0))
        fail("kappa: must be > 0 (got " + std::to_string(c.kappa) + ")");
    if (!(c.lambda >= 0.0))
        fail("lambda: must be >= 0 (got " + std::to_string(c.lambda) + ")");
    if (!(c.m >= 0.0 && c.m <= 1.0))
        fail("m: must lie in [0, 1] (got " + std::to_string(c.m) + ")");
    if (!(c.hbar_eff > 0.0))
        fail("hbar_eff: must be > 0 (got " + std::to_string(c.hbar_eff) + ")");
    if (!(c.dp0 > 0.0))
        fail("dp0: must be > 0 (got " + std::to_string(c.dp0) + ")");
    for (const double m : c.m_grid)
        if (!(m >= 0.0 && m <= 1.0))
            fail("m_grid: entries must lie in [0, 1] (got " + std::to_string(m) + ")");
    for (const double m : c.m_list)
        if (!(m >= 0.0 && m <= 1.0))
            fail("m_list: entries must lie in [0, 1] (got " + std::to_string(m) + ")");
    for (const double l : c.lambda_grid)
        if (!(l >= 0.0))
            fail("lambda_grid: entries must be >= 0 (got " + std::to_string(l) + ")");
    if (c.m_grid.empty())
        fail("m_grid: must not be empty");
    if (c.lambda_grid.empty())
        fail("lambda_grid: must not be empty");
    if (c.m_list.empty())
        fail("m_list: must not be empty");
    if (c.ensemble_size < 1)
        fail("ensemble_size: must be >= 1");
    if (c.classical_steps_per_period < 1)
        fail("classical_steps_per_period: must be >= 1");
    if (c.n_periods < 0)
        fail("n_periods: must be >= 0");
    if (c.avg_strobes < 1)
        fail("avg_strobes: must be >= 1");
    if (c.n_cells < 1)
        fail("n_cells: must be >= 1");
    if (c.points_per_cell < 32 || (c.points_per_cell & (c.points_per_cell - 1)) != 0)
        fail("points_per_cell: must be a power of two >= 32");
    if (c.quantum_steps_per_period < 1)
        fail("quantum_steps_per_period: must be >= 1");
    if (c.n_packets < 1)
        fail("n_packets: must be >= 1");
    if (c.psos_nx < 1 || c.psos_np < 1)
        fail("psos_nx/psos_np: must be >= 1");
    if (!(c.psos_p_min < c.psos_p_max))
        fail("psos_p_min/psos_p_max: need p_min < p_max");
    if (c.psos_periods < 1)
        fail("psos_periods: must be >= 1");
    if (c.husimi_nx < 1 || c.husimi_np < 1)
        fail("husimi_nx/husimi_np: must be >= 1");
    if (!(c.husimi_p_min < c.husimi_p_max))
        fail("husimi_p_min/husimi_p_max: need p_min < p_max");
    if (!(c.husimi_alpha > 0.0))
        fail("husimi_alpha: must be > 0");
    if (c.husimi_images < 0)
        fail("husimi_images: must be >= 0");
    if (c.threads < 0)
        fail("threads: must be >= 0 (0 = auto)");
    if (c.output_path.empty())
        fail("output_path: must not be empty");
}

// Parse the flat key = value text. Empty text yields the all-defaults
// config. Throws ConfigError with a line number on any problem.
inline RunConfig parse_config(const std::string& text) {
    RunConfig c;
    std::stringstream ss(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(ss, raw)) {
        ++line_no;
        const auto hash = raw.find('#');
        if (hash != std::string::npos)
            raw = raw.substr(0, hash);
        const std::string line = detail::trim(raw);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(line_no, "expected 'key = value', got '" + line + "'");
        const std::string key = detail::trim(line.substr(0, eq));
        const std::string value = detail::trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigError(line_no, "missing key before '='");
        if (value.empty())
            throw ConfigError(line_no, "missing value for key '" + key + "'");

        if (key == "experiment") {
            const auto it = experiment_names().find(value);
            if (it == experiment_names().end())
                throw ConfigError(line_no, "unknown experiment '" + value + "'");
            c.experiment = it->second;
        } else if (key == "kappa") {
            c.kappa = detail::parse_double(value, line_no);
        } else if (key == "lambda") {
            c.lambda = detail::parse_double(value, line_no);
        } else if (key == "m") {
            c.m = detail::parse_double(value, line_no);
        } else if (key == "hbar_eff") {
            c.hbar_eff = detail::parse_double(value, line_no);
        } else if (key == "dp0") {
            c.dp0 = detail::parse_double(value, line_no);
        } else if (key == "m_grid") {
            c.m_grid = detail::parse_grid(value, line_no);
        } else if (key == "lambda_grid") {
            c.lambda_grid = detail::parse_grid(value, line_no);
        } else if (key == "m_list") {
            c.m_list = detail::parse_grid(value, line_no);
        } else if (key == "ensemble_size") {
            c.ensemble_size = detail::parse_int(value, line_no);
        } else if (key == "classical_steps_per_period") {
            c.classical_steps_per_period = detail::parse_int(value, line_no);
        } else if (key == "n_periods") {
            c.n_periods = detail::parse_int(value, line_no);
        } else if (key == "avg_strobes") {
            c.avg_strobes = detail::parse_int(value, line_no);
        } else if (key == "n_cells") {
            c.n_cells = detail::parse_int(value, line_no);
        } else if (key == "points_per_cell") {
            c.points_per_cell = detail::parse_int(value, line_no);
        } else if (key == "quantum_steps_per_period") {
            c.quantum_steps_per_period = detail::parse_int(value, line_no);
        } else if (key == "n_packets") {
            c.n_packets = detail::parse_int(value, line_no);
        } else if (key == "x0") {
            c.x0 = detail::parse_double(value, line_no);
        } else if (key == "p0") {
            c.p0 = detail::parse_double(value, line_no);
        } else if (key == "psos_nx") {
            c.psos_nx = detail::parse_int(value, line_no);
        } else if (key == "psos_np") {
            c.psos_np = detail::parse_int(value, line_no);
        } else if (key == "psos_p_min") {
            c.psos_p_min = detail::parse_double(value, line_no);
        } else if (key == "psos_p_max") {
            c.psos_p_max = detail::parse_double(value, line_no);
        } else if (key == "psos_periods") {
            c.psos_periods = detail::parse_int(value, line_no);
        } else if (key == "husimi_nx") {
            c.husimi_nx = detail::parse_int(value, line_no);
        } else if (key == "husimi_np") {
            c.husimi_np = detail::parse_int(value, line_no);
        } else if (key == "husimi_p_min") {
            c.husimi_p_min = detail::parse_double(value, line_no);
        } else if (key == "husimi_p_max") {
            c.husimi_p_max = detail::parse_double(value, line_no);
        } else if (key == "husimi_alpha") {
            c.husimi_alpha = detail::parse_double(value, line_no);
        } else if (key == "husimi_images") {
            c.husimi_images = detail::parse_int(value, line_no);
        } else if (key == "seed") {
            c.seed = detail::parse_u64(value, line_no);
        } else if (key == "threads") {
            c.threads = detail::parse_int(value, line_no);
        } else if (key == "output_path") {
            c.output_path = value;
        } else {
            throw ConfigError(line_no, "unknown key '" + key + "'");
        }
    }
    validate(c);
    return c;
}

// Emit every key; parse_config(emit_config(c)) == c for any valid config.
inline std::string emit_config(const RunConfig& c) {
    std::ostringstream out;
    auto list = [](const std::vector<double>& v) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i)
                s += ',';
            s += format_g17(v[i]);
        }
        return s;
    };
    out << "experiment = " << experiment_name(c.experiment) << '\n'
        << "kappa = " << format_g17(c.kappa) << '\n'
        << "lambda = " << format_g17(c.lambda) << '\n'
        << "m = " << format_g17(c.m) << '\n'
        << "hbar_eff = " << format_g17(c.hbar_eff) << '\n'
        << "dp0 = " << format_g17(c.dp0) << '\n'
        << "m_grid = " << list(c.m_grid) << '\n'
        << "lambda_grid = " << list(c.lambda_grid) << '\n'
        << "m_list = " << list(c.m_list) << '\n'
        << "ensemble_size = " << c.ensemble_size << '\n'
        << "classical_steps_per_period = " << c.classical_steps_per_period << '\n'
        << "n_periods = " << c.n_periods << '\n'
        << "avg_strobes = " << c.avg_strobes << '\n'
        << "n_cells = " << c.n_cells << '\n'
        << "points_per_cell = " << c.points_per_cell << '\n'
        << "quantum_steps_per_period = " << c.quantum_steps_per_period << '\n'
        << "n_packets = " << c.n_packets << '\n'
        << "x0 = " << format_g17(c.x0) << '\n'
        << "p0 = " << format_g17(c.p0) << '\n'
        << "psos_nx = " << c.psos_nx << '\n'
        << "psos_np = " << c.psos_np << '\n'
        << "psos_p_min = " << format_g17(c.psos_p_min) << '\n'
        << "psos_p_max = " << format_g17(c.psos_p_max) << '\n'
        << "psos_periods = " << c.psos_periods << '\n'
        << "husimi_nx = " << c.husimi_nx << '\n'
        << "husimi_np = " << c.husimi_np << '\n'
        << "husimi_p_min = " << format_g17(c.husimi_p_min) << '\n'
        << "husimi_p_max = " << format_g17(c.husimi_p_max) << '\n'
        << "husimi_alpha = " << format_g17(c.husimi_alpha) << '\n'
        << "husimi_images = " << c.husimi_images << '\n'
        << "seed = " << c.seed << '\n'
        << "threads = " << c.threads << '\n'
        << "output_path = " << c.output_path << '\n';
    return out.str();
}

}  // namespace dynloc

#endif
